#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bergman_lab/integration.hpp"
#include "oracles.hpp"

using namespace bl;

namespace {

const RealIntegrand one = [](const QuadNode&) { return 1.0; };

double area(const Region& region, int resolution) { return integrate_real(region_quadrature(region, resolution), one); }

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
    const GaussRule& g = gauss_legendre(20);
    REQUIRE(g.x.size() == 20);
    double s = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        s += g.w[i];
        m4 += g.w[i] * std::pow(g.x[i], 38);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m4 == doctest::Approx(2.0 / 39.0).epsilon(1e-12));
    const oracle::Rule o = oracle::gauss01(20);
    CHECK(0.5 * (1.0 + g.x[0]) == doctest::Approx(std::min(o.x.front(), o.x.back())).epsilon(1e-13));
}

TEST_CASE("full disc integrals") {
    const DiscQuadrature q = disc_rule(1.0, 32, 32);
    CHECK(integrate_real(q, one) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(integrate_real(q, [](const QuadNode& n) { return n.s; }) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(integrate_real(q, [](const QuadNode& n) { return std::norm(n.z); }) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(std::abs(integrate(q, [](const QuadNode& n) { return n.z * n.z; })) < 1e-14);
    CHECK(integrate_real(region_quadrature(Region::full_disc(), 16), one) == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("polynomial exactness of the model rule") {
    const int N = 40;
    const DiscQuadrature q = model_rule(N);
    for (int n : {0, 7, 40}) {
        const double v = integrate_real(q, [n](const QuadNode& x) { return std::pow(std::norm(x.z), n); });
        CHECK(v == doctest::Approx(oracle::monomial_norm2(n, 0.0)).epsilon(1e-12));
        const cplx off = integrate(q, [n](const QuadNode& x) { return std::pow(x.z, n + 1) * std::pow(std::conj(x.z), n); });
        CHECK(std::abs(off) < 1e-13);
    }
}

TEST_CASE("region areas") {
    CHECK(area(Region::euclidean_disk(0.0, 0.5), 16) == doctest::Approx(0.25 * kPi).epsilon(1e-10));
    CHECK(area(Region::euclidean_disk(0.4, 0.4), 16) == doctest::Approx(0.16 * kPi).epsilon(1e-10));
    CHECK(area(Region::pseudo_disk(0.5, 0.5), 16) == doctest::Approx(0.16 * kPi).epsilon(1e-10));
    CHECK(area(Region::carleson_set(0.0), 32) == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(area(Region::annulus(0.5, 1.0), 16) == doctest::Approx(0.75 * kPi).epsilon(1e-10));
}

TEST_CASE("Carleson set area against the pull-back oracle") {
    for (DiscPoint a : {DiscPoint(0.5), DiscPoint(0.3, 0.7), DiscPoint(-0.9, 0.1)}) {
        const double expect = oracle::carleson_set_mass(a, 0.0);
        CHECK(area(Region::carleson_set(a), 48) == doctest::Approx(expect).epsilon(1e-6));
        const double w = integrate_real(region_quadrature(Region::carleson_set(a), 48), [](const QuadNode& n) { return n.s; });
        CHECK(w == doctest::Approx(oracle::carleson_set_mass(a, 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("Mobius disc pull-back covers the disc") {
    const double v = integrate_real(mobius_disc_rule(cplx(0.6, -0.2), 64, 64), [](const QuadNode& n) { return n.s; });
    CHECK(v == doctest::Approx(kPi / 2).epsilon(1e-8));
}

TEST_CASE("additivity of disc and annulus") {
    const RealIntegrand f = [](const QuadNode& n) { return std::exp(n.z.real()) * (1.0 + n.z.imag() * n.z.imag()); };
    const double inner = integrate_real(region_quadrature(Region::euclidean_disk(0.0, 0.5), 24), f);
    const double outer = integrate_real(region_quadrature(Region::annulus(0.5, 1.0), 24), f);
    const double full = integrate_real(region_quadrature(Region::full_disc(), 24), f);
    const double expect = oracle::polar_integral([](cplx z, double) { return std::exp(z.real()) * (1.0 + z.imag() * z.imag()); },
                                                 1.0, 64, 128);
    CHECK(std::abs(inner + outer - full) < 1e-6);
    CHECK(full == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("positivity and refinement") {
    const RealIntegrand f = [](const QuadNode& n) { return std::abs(n.z.real() - 0.3); };
    double prev = 0.0;
    double prev_step = 1e300;
    for (int res : {8, 16, 32, 64}) {
        const double v = integrate_real(region_quadrature(Region::euclidean_disk(0.1, 0.6), res), f);
        CHECK(v > 0.0);
        if (prev != 0.0) {
            const double step = std::abs(v - prev);
            CHECK(step <= prev_step * 1.5 + 1e-12);
            prev_step = step;
        }
        prev = v;
    }
}

TEST_CASE("radial panel rule") {
    const std::vector<RadialNode> nodes = radial_panel_rule(0.999, 16);
    double s = 0.0, m = 0.0;
    for (const RadialNode& n : nodes) {
        s += n.weight;
        m += n.weight * std::pow(n.s, -0.5);
    }
    CHECK(2.0 * kPi * s == doctest::Approx(kPi * 0.999 * 0.999).epsilon(1e-12));
    // int_0^R (1-r^2)^{-1/2} r dr = 1 - sqrt(1-R^2)
    CHECK(m == doctest::Approx(1.0 - std::sqrt(1.0 - 0.999 * 0.999)).epsilon(1e-8));
}

TEST_CASE("converged integral flags a non-integrable singularity") {
    const ConvergedIntegral ok = converged_integral(Region::full_disc(0.9), 16, [](const QuadNode& n) { return n.s; });
    CHECK_FALSE(ok.divergent);
    CHECK(ok.value == doctest::Approx(oracle::polar_integral([](cplx, double s) { return s; }, 0.9, 16, 8)).epsilon(1e-10));
}

TEST_CASE("moment matrices") {
    const DiscQuadrature q = model_rule(10);
    const MomentMatrix M = polar_moments(q, 10, [](const QuadNode& n) { return n.s; });
    const std::vector<double> d = radial_moments(q, 10, [](double, double s) { return s; });
    for (int j = 0; j <= 10; ++j) {
        // int |z|^{2j}(1-|z|^2) dA = pi B(j+1, 2)
        CHECK(M(j, j).real() == doctest::Approx(oracle::monomial_norm2(j, 1.0)).epsilon(1e-12));
        CHECK(d[j] == doctest::Approx(M(j, j).real()).epsilon(1e-12));
        if (j > 0) CHECK(std::abs(M(j, j - 1)) < 1e-14);
    }
}
