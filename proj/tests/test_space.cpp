#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "bergman_lab/space.hpp"
#include "oracles.hpp"

using namespace bl;

namespace {

const ModelPtr& classical() {
    static const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    return m;
}

const ModelPtr& standard1() {
    static const ModelPtr m = build_kernel_model(Weight::standard(1.0), 120);
    return m;
}

const ModelPtr& skew() {
    static const ModelPtr m = build_kernel_model(Weight::power_one_minus_z(0.5), 40);
    return m;
}

double band_spread(const CriterionReport& rep, const std::string& key) {
    return rep.values.at(key + "_max") / rep.values.at(key + "_min");
}

}  // namespace

TEST_CASE("classical basis is z^n sqrt((n+1)/pi)") {
    const KernelModel& m = *classical();
    REQUIRE(m.radial());
    for (int n : {0, 1, 10, 200}) CHECK(m.diagonal_norms()[n] == doctest::Approx(kPi / (n + 1)).epsilon(1e-12));
    const DiscPoint z(0.3, -0.4);
    const std::vector<cplx> e = m.basis(z);
    for (int n : {0, 5, 50})
        CHECK(std::abs(e[n] - std::pow(z, n) * std::sqrt((n + 1) / kPi)) < 1e-13);
    CHECK(m.gram_residual() <= 1e-8);
}

TEST_CASE("standard(1) Gram diagonal is a Beta integral") {
    const KernelModel& m = *standard1();
    for (int n : {0, 1, 30, 120}) {
        CHECK(m.diagonal_norms()[n] == doctest::Approx(kPi / ((n + 1.0) * (n + 2.0))).epsilon(1e-12));
        CHECK(m.diagonal_norms()[n] == doctest::Approx(oracle::monomial_norm2(n, 1.0)).epsilon(1e-12));
    }
    CHECK(m.gram_residual() <= 1e-8);
}

TEST_CASE("non-radial model is orthonormal") {
    const KernelModel& m = *skew();
    CHECK_FALSE(m.radial());
    CHECK(m.gram_residual() <= 1e-8);
    // independent Gram matrix of |1-z|^{1/2}
    Eigen::MatrixXcd G(41, 41);
    for (int j = 0; j <= 40; ++j)
        for (int l = 0; l <= 40; ++l) G(j, l) = oracle::power_weight_moment(j, l, 0.5);
    CHECK(std::abs(G(0, 0) - m.gram()(0, 0)) < 1e-10);
    const Eigen::MatrixXcd C = m.coefficients();
    CHECK((C * G * C.adjoint() - Eigen::MatrixXcd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("kernel values") {
    CHECK(kernel_eval(*classical(), 0.0, 0.0).real() == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(std::abs(kernel_eval(*classical(), 0.5, 0.5) - 1.0 / (kPi * 0.5625)) < 1e-6);
    CHECK(kernel_eval(*standard1(), 0.0, 0.0).real() == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    const DiscPoint z(0.2, 0.5), w(-0.3, 0.1);
    CHECK(std::abs(kernel_eval(*standard1(), z, w) - oracle::standard_kernel(z, w, 1.0)) < 1e-9);
}

TEST_CASE("kernel is Hermitian and positive semidefinite") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-0.65, 0.65);
    std::vector<DiscPoint> pts(12);
    for (DiscPoint& p : pts) p = DiscPoint(U(rng), U(rng));
    for (const ModelPtr& m : {classical(), standard1(), skew()}) {
        Eigen::MatrixXcd K(12, 12);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) K(i, j) = kernel_eval(*m, pts[i], pts[j]);
        CHECK((K - K.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * K.cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());
    }
}

TEST_CASE("diagonal is nondecreasing in N and converges") {
    const KernelModel& m = *classical();
    for (DiscPoint z : {DiscPoint(0.9), DiscPoint(0.5, 0.5)}) {
        double prev = 0.0;
        for (int n = 0; n <= 200; n += 10) {
            const double v = m.diag(z, n);
            CHECK(v >= prev);
            prev = v;
        }
    }
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const DiscPoint z = std::polar(0.7 * std::sqrt((k + 0.5) / 200.0), 2.39996 * k);
        const double exact = 1.0 / (kPi * std::pow(1.0 - std::norm(z), 2));
        worst = std::max(worst, std::abs(m.diag(z) - exact) / exact);
    }
    CHECK(worst < 1e-6);
    CHECK(resolved(m, 0.7));
    CHECK_FALSE(resolved(m, 0.999));
}

TEST_CASE("kernel norms") {
    const KernelModel& m = *classical();
    CHECK(kernel_norm(m, 0.0, 2.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-10));
    CHECK(kernel_norm(m, 0.0, 4.0) == doctest::Approx(std::pow(kPi, -0.75)).epsilon(1e-10));
    // p = 1 against the oracle: int |K_w| dA over the disc
    const DiscPoint w(0.4, 0.3);
    const double o = oracle::polar_integral([&](cplx z, double) { return std::abs(kernel_eval(m, z, w)); }, 1.0, 300, 512, true);
    CHECK(kernel_norm_report(m, w, 1.0).value == doctest::Approx(o).epsilon(1e-6));
}

TEST_CASE("reproducing identity at lattice points") {
    const Lattice L = build_lattice(0.5, 0.9, 500);
    for (const ModelPtr& m : {classical(), standard1()}) {
        double worst = 0.0;
        for (DiscPoint w : L.points) {
            const double n2 = kernel_norm(*m, w, 2.0);
            worst = std::max(worst, std::abs(n2 * n2 - m->diag(w)) / m->diag(w));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("normalized kernels") {
    const NormalizedKernel k0 = normalized_kernel(classical(), 0.0, 2.0);
    for (DiscPoint z : {DiscPoint(0.0), DiscPoint(0.3, 0.6), DiscPoint(-0.9)})
        CHECK(std::abs(k0(z) - 1.0 / std::sqrt(kPi)) < 1e-12);

    const NormalizedKernel kw = normalized_kernel(standard1(), DiscPoint(0.5, -0.2), 2.0);
    const double total = oracle::polar_integral(
        [&](cplx z, double s) { return std::norm(kw(z)) * s; }, 1.0, 300, 320, true);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(kw(0.3) * kw.norm_value() - kernel_eval(*standard1(), 0.3, DiscPoint(0.5, -0.2))) < 1e-12);
}

TEST_CASE("reproducing check") {
    CHECK(reproducing_check(*classical(), {1.0}, cplx(0.2, 0.7)) < 1e-8);
    const ModelPtr m50 = build_kernel_model(Weight::constant(), 50);
    CHECK(reproducing_check(*m50, {0.0, 2.0, 0.0, 1.0}, 0.3) <= 1e-7);
    for (const ModelPtr& m : {classical(), standard1(), skew()}) {
        std::vector<cplx> f(static_cast<std::size_t>(m->degree()) + 1, 0.0);
        f.back() = 1.0;
        CHECK(reproducing_check(*m, f, DiscPoint(0.6, 0.3)) <= 1e-6);
    }
    CHECK_THROWS_AS(reproducing_check(*m50, std::vector<cplx>(60, 1.0), 0.1), DomainError);
}

TEST_CASE("inner product matches the basis expansion") {
    const KernelModel& m = *skew();
    const std::vector<cplx> f = {cplx(1, 2), 0.5, cplx(0, -1)}, g = {0.3, cplx(0.2, 0.1)};
    const std::vector<cplx> bf = m.to_basis(f), bg = m.to_basis(g);
    cplx expect = 0.0;
    for (std::size_t k = 0; k < bf.size(); ++k) expect += bf[k] * std::conj(bg[k]);
    CHECK(std::abs(inner_product(m, f, g) - expect) < 1e-10);
}

TEST_CASE("kernel estimate report, classical weight") {
    const Lattice L = build_lattice(0.5, 0.95, 2000);
    const CriterionReport rep = kernel_estimate_report(*classical(), 0.5, L);
    const double r2 = 0.25;
    CHECK(rep.values.at("diag_band_min") >= r2 * (1.0 - 1e-3));
    CHECK(rep.values.at("diag_band_max") <= r2 / std::pow(1.0 - r2, 2) * (1.0 + 1e-3));
    for (const PointValue& pv : rep.per_point) {
        const double exact = r2 / std::pow(1.0 - r2 * std::norm(pv.z), 2);
        CHECK(pv.value == doctest::Approx(exact).epsilon(1e-5));
    }
    // both comparability targets give bounded bands for u = 1
    for (const char* p : {"p_1", "p_2", "p_4"}) {
        CHECK(band_spread(rep, std::string("kernel_norm_printed_") + p) < 20.0);
        CHECK(band_spread(rep, std::string("kernel_norm_consistent_") + p) < 20.0);
    }
    CHECK(rep.values.at("near_diag_delta_0.05_min") > 0.9);
}

TEST_CASE("kernel estimate report, standard(1)") {
    const Lattice L = build_lattice(0.5, 0.95, 2000);
    const CriterionReport rep = kernel_estimate_report(*standard1(), 0.5, L);
    CHECK(rep.values.at("points_used") > 0.0);
    for (const char* p : {"p_1", "p_2", "p_4"})
        CHECK(band_spread(rep, std::string("kernel_norm_consistent_") + p) < 20.0);
    CHECK(band_spread(rep, "kernel_norm_consistent_p_2") < 5.0);
}

TEST_CASE("standard(1) kernel norms follow u(Delta)^{1/p-1}, not the printed target") {
    // ring ratios of ||K_w||_4 against both targets on a deep ladder
    const ModelPtr m = build_kernel_model(Weight::standard(1.0), 400);
    const BoundaryLadder L = boundary_ladder(5, 1);
    std::vector<double> consistent, printed;
    for (double rho : L.radii) {
        REQUIRE(resolved(*m, rho));
        const double norm = kernel_norm(*m, rho, 4.0);
        const double ud = oracle::power_density_disk_mass(rho, 0.5, 1.0);
        consistent.push_back(norm / std::pow(ud, -0.75));
        printed.push_back(norm / (std::pow(ud, 0.25) / std::pow(1.0 - rho, 2)));
    }
    for (std::size_t k = 2; k < consistent.size(); ++k) {
        CHECK(consistent[k] / consistent[k - 1] < consistent[k - 1] / consistent[k - 2]);
        CHECK(printed[k] / printed[k - 1] > printed[k - 1] / printed[k - 2]);
    }
    const std::size_t k = consistent.size() - 1;
    CHECK(consistent[k] / consistent[k - 1] < 1.1);
    CHECK(printed[k] / printed[k - 1] > 1.8);
}

TEST_CASE("normalized kernels weakly decay along the ladder") {
    const std::vector<cplx> g = {1.0, cplx(0.5, -0.5), 0.0, 2.0};
    const BoundaryLadder L = boundary_ladder(5, 4);
    for (const ModelPtr& m : {classical(), standard1()}) {
        double prev = INFINITY;
        for (std::size_t j = 0; j < L.radii.size(); ++j) {
            double ring = 0.0;
            for (DiscPoint w : L.ring(j)) {
                const double n2 = kernel_norm(*m, w, 2.0);
                ring = std::max(ring, std::abs(eval_poly(g, w)) * n2 / (n2 * n2));
            }
            CHECK(ring < prev);
            prev = ring;
        }
    }
}

TEST_CASE("model errors") {
    CHECK_THROWS_AS(build_kernel_model(Weight::constant(), 0), DomainError);
    CHECK_THROWS_AS(build_kernel_model(Weight::power_one_minus_z(0.5), 2500), DegeneracyError);
    CHECK(default_degree(Weight::constant()) == 200);
    CHECK(default_degree(Weight::standard(1.0)) == 120);
}
