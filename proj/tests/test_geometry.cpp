#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergman_lab/geometry.hpp"
#include "oracles.hpp"

using namespace bl;

namespace {

// max |d(z, b) - r| over n points b of the returned Euclidean boundary circle
double boundary_defect(DiscPoint z, double r, int n = 1000) {
    const PseudoDisk D = pseudo_disk(z, r);
    double e = 0.0;
    for (int k = 0; k < n; ++k) {
        const DiscPoint b = D.euclid_center + std::polar(D.euclid_radius, 2.0 * kPi * k / n);
        e = std::max(e, std::abs(oracle::pseudo_distance(z, b) - r));
    }
    return e;
}

DiscPoint random_point(std::mt19937_64& rng, double R = 0.999) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(R * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

}  // namespace

TEST_CASE("pseudo_distance values") {
    CHECK(pseudo_distance(0.0, 0.6) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(pseudo_distance(cplx(0.3, -0.2), cplx(0.3, -0.2)) == 0.0);
    CHECK(pseudo_distance(0.5, -0.5) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("pseudo_distance is symmetric and Mobius invariant") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const DiscPoint z = random_point(rng), w = random_point(rng), a = random_point(rng, 0.9);
        CHECK(pseudo_distance(z, w) == doctest::Approx(pseudo_distance(w, z)).epsilon(1e-12));
        CHECK(pseudo_distance(mobius(a, z), mobius(a, w)) == doctest::Approx(pseudo_distance(z, w)).epsilon(1e-9));
        CHECK(pseudo_distance(z, w) == doctest::Approx(oracle::pseudo_distance(z, w)).epsilon(1e-14));
    }
}

TEST_CASE("mobius is an involution with the expected Jacobian") {
    const DiscPoint a(0.4, -0.3), z(-0.2, 0.5);
    CHECK(std::abs(mobius(a, mobius(a, z)) - z) < 1e-14);
    CHECK(std::abs(mobius(a, 0.0) - a) < 1e-15);
    const double h = 1e-6;
    const double fd = std::norm((mobius(a, z + h) - mobius(a, z - h)) / (2.0 * h));
    CHECK(mobius_jacobian(a, z) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("strong triangle inequality on random triples") {
    std::mt19937_64 rng(11);
    double worst = -1.0;
    for (int i = 0; i < 10000; ++i) {
        const DiscPoint z = random_point(rng), w = random_point(rng), x = random_point(rng);
        const double a = pseudo_distance(z, x), b = pseudo_distance(x, w);
        worst = std::max(worst, pseudo_distance(z, w) - (a + b) / (1.0 + a * b));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("local comparability band for nearby points") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double r : {0.3, 0.9}) {
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const DiscPoint z = random_point(rng);
            // w = phi_z(x) with |x| < r lies in Delta(z, r)
            const DiscPoint w = mobius(z, std::polar(r * u(rng), 2.0 * kPi * u(rng)));
            REQUIRE(pseudo_distance(z, w) < r);
            for (double q : {(1.0 - std::abs(z)) / (1.0 - std::abs(w)),
                             (1.0 - std::abs(z)) / std::abs(1.0 - std::conj(w) * z)}) {
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
        }
        const double C = (1.0 + r) / (1.0 - r);
        CHECK(lo >= 1.0 / (2.0 * C));
        CHECK(hi <= 2.0 * C);
    }
}

TEST_CASE("pseudo_disk Euclidean parameters") {
    const PseudoDisk D0 = pseudo_disk(0.0, 0.5);
    CHECK(std::abs(D0.euclid_center) < 1e-15);
    CHECK(D0.euclid_radius == doctest::Approx(0.5));

    const PseudoDisk D1 = pseudo_disk(0.5, 0.5);
    CHECK(std::abs(D1.euclid_center - 0.4) < 1e-14);
    CHECK(D1.euclid_radius == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(boundary_defect(0.5, 0.5) <= 1e-9);

    const PseudoDisk D2 = pseudo_disk(0.9, 0.3);
    CHECK(D2.euclid_center.real() == doctest::Approx(0.88341).epsilon(1e-5));
    CHECK(D2.euclid_radius == doctest::Approx(0.06148).epsilon(1e-4));
    CHECK(boundary_defect(0.9, 0.3) <= 1e-9);
}

TEST_CASE("pseudo_disk boundary oracle on random disks") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) worst = std::max(worst, boundary_defect(random_point(rng, 0.99), u(rng), 200));
    CHECK(worst <= 1e-9);
}

TEST_CASE("pseudo_disk membership is strict") {
    const PseudoDisk D = pseudo_disk(0.0, 0.5);
    CHECK(D.contains(0.49));
    CHECK_FALSE(D.contains(0.6));
    CHECK(D.euclid_area() == doctest::Approx(0.25 * kPi));
}

TEST_CASE("Carleson set membership") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) CHECK(carleson_contains(CarlesonSet{0.0}, random_point(rng)));
    const DiscPoint a(0.3, 0.6);
    CHECK(carleson_contains(CarlesonSet{a}, a));
    CHECK_FALSE(carleson_contains(CarlesonSet{0.5}, -0.5));
    CHECK(carleson_contains(CarlesonSet{0.5}, 0.9));
}

TEST_CASE("lattice at r = 0.5, R_max = 0.9") {
    const Lattice L = build_lattice(0.5, 0.9);
    REQUIRE(!L.points.empty());
    double sep = 1.0;
    for (std::size_t i = 0; i < L.points.size(); ++i)
        for (std::size_t j = i + 1; j < L.points.size(); ++j)
            sep = std::min(sep, oracle::pseudo_distance(L.points[i], L.points[j]));
    CHECK(sep >= 0.25);
    CHECK(L.certificate.disjoint);
    CHECK(L.certificate.min_separation == doctest::Approx(sep));
    CHECK(L.certificate.ok());
}

TEST_CASE("lattice covering and multiplicity by direct scan") {
    for (double r : {0.2, 0.5}) {
        const Lattice L = build_lattice(r, 0.9, 2000);
        const double r2 = 2.0 * r / (1.0 + r * r);
        CHECK(doubled_radius(r) == doctest::Approx(r2).epsilon(1e-14));
        std::mt19937_64 rng(23);
        int worst_mult = 0;
        bool covered = true;
        for (int i = 0; i < 2000; ++i) {
            const DiscPoint z = random_point(rng, 0.9);
            bool hit = false;
            int mult = 0;
            for (DiscPoint a : L.points) {
                const double d = oracle::pseudo_distance(z, a);
                hit = hit || d < r;
                mult += d < r2;
            }
            covered = covered && hit;
            worst_mult = std::max(worst_mult, mult);
        }
        CHECK(covered);
        CHECK(worst_mult <= L.multiplicity_bound);
        CHECK(L.certificate.covered_points == L.certificate.audit_points);
        CHECK(L.certificate.max_multiplicity <= L.multiplicity_bound);
    }
}

TEST_CASE("lattice construction is deterministic") {
    const Lattice a = build_lattice(0.4, 0.95, 1000), b = build_lattice(0.4, 0.95, 1000);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(std::equal(a.points.begin(), a.points.end(), b.points.begin()));
}

TEST_CASE("lattice_neighbors agrees with a scan") {
    const Lattice L = build_lattice(0.5, 0.9, 500);
    const DiscPoint z(0.3, 0.4);
    std::size_t expect = 0;
    for (DiscPoint a : L.points) expect += oracle::pseudo_distance(z, a) < 0.6;
    CHECK(lattice_neighbors(L, z, 0.6).size() == expect);
}

TEST_CASE("boundary ladder construction") {
    const BoundaryLadder L = boundary_ladder(2, 4);
    REQUIRE(L.radii.size() == 2);
    CHECK(L.radii[0] == 0.5);
    CHECK(L.radii[1] == 0.75);
    CHECK(L.ring(0).size() == 4);
    for (std::size_t j = 0; j < 2; ++j)
        for (DiscPoint z : L.ring(j)) CHECK(std::abs(z) == doctest::Approx(L.radii[j]).epsilon(1e-15));

    const BoundaryLadder M = boundary_ladder(4, 8);
    CHECK(M.points().size() == 32);
    CHECK(M.radii.back() == 0.9375);
    CHECK(M.gap(3) == 0.0625);

    const BoundaryLadder deep = boundary_ladder(40, 3);
    for (DiscPoint z : deep.points()) CHECK(std::abs(z) < 1.0);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(pseudo_disk(1.2, 0.5), DomainError);
    CHECK_THROWS_AS(pseudo_disk(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(build_lattice(0.0), DomainError);
}
