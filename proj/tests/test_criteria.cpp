#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bergman_lab/criteria.hpp"
#include "bergman_lab/toeplitz.hpp"
#include "oracles.hpp"

using namespace bl;

namespace {

const ModelPtr& classical() {
    static const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    return m;
}

// resolves the Berezin transform along the default 20-ring ladder
const ModelPtr& fine() {
    static const ModelPtr m = build_kernel_model(Weight::constant(), 4096);
    return m;
}

const std::vector<DiscPoint> grid = {0.0, DiscPoint(0.5, 0.0), DiscPoint(-0.3, 0.6)};

// mu^_r(z) / |Delta(z,r)|^e for (1-|w|^2)^t dA and u = 1
double hat_index_oracle(DiscPoint z, double r, double t, double e) {
    const double area = oracle::pseudo_disk_area(z, r);
    return oracle::power_density_disk_mass(z, r, t) / area / std::pow(area, e);
}

// int_{|z|<R} f(|z|) dA on dyadic panels
double radial_oracle(const std::function<double(double)>& f, double R) {
    const oracle::Rule g = oracle::gauss01(24);
    double sum = 0.0, a = 0.0;
    while (a < R) {
        const double b = std::min(R, a == 0.0 ? 0.5 : 1.0 - (1.0 - a) / 2.0);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double rho = a + (b - a) * g.x[i];
            sum += 2.0 * oracle::pi * f(rho) * rho * (b - a) * g.w[i];
        }
        a = b;
    }
    return sum;
}

DiscMeasure ladder_atoms(const BoundaryLadder& L, double power) {
    std::vector<Atom> atoms;
    for (DiscPoint a : L.points()) atoms.push_back({a, std::pow(1.0 - std::norm(a), power)});
    return DiscMeasure::atomic(atoms);
}

}  // namespace

TEST_CASE("boundedness index of u dA is 1 for p = q") {
    const BoundaryLadder L = boundary_ladder(8, 8);
    for (const ModelPtr& m : {classical(), build_kernel_model(Weight::standard(1.0), 120)}) {
        const CriterionReport rep = boundedness_index(DiscMeasure::weighted_area(m->weight()), *m, 2, 2, 2, 0.5, grid, L);
        CHECK(rep.index_value == doctest::Approx(1.0).epsilon(1e-10));
        for (const PointValue& v : rep.per_point) CHECK(v.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.verdict == Verdict::finite);
    }
}

TEST_CASE("boundedness index of power densities, p = 2, q = 4") {
    const BoundaryLadder L = boundary_ladder(20, 8);
    const CriterionReport ok = boundedness_index(DiscMeasure::power_density(0.6), *classical(), 2, 4, 2, 0.5, grid, L);
    CHECK(ok.verdict == Verdict::finite);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(ok.per_point[k].value == doctest::Approx(hat_index_oracle(grid[k], 0.5, 0.6, 0.25)).epsilon(1e-8));

    const CriterionReport bad = boundedness_index(DiscMeasure::power_density(0.4), *classical(), 2, 4, 2, 0.5, grid, L);
    CHECK(bad.verdict == Verdict::divergent);
    // ring maxima scale like (1-rho)^(t - 1/2)
    const double ratio = bad.ring_trend.back().value / bad.ring_trend[bad.ring_trend.size() - 2].value;
    CHECK(ratio == doctest::Approx(std::pow(2.0, 0.1)).epsilon(1e-3));
}

TEST_CASE("compactness index") {
    const BoundaryLadder L = boundary_ladder(20, 8);
    const CriterionReport at = compactness_index(DiscMeasure::atomic({{0.0, 1.0}, {cplx(0.2, 0.4), 3.0}}), *classical(), 2, 2, 2,
                                                 0.5, L);
    CHECK(at.verdict == Verdict::vanishing);
    CHECK(at.index_value == 0.0);

    const CriterionReport id = compactness_index(DiscMeasure::weighted_area(Weight::constant()), *classical(), 2, 2, 2, 0.5, L);
    for (const RingValue& v : id.ring_trend) CHECK(v.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(id.verdict == Verdict::finite);

    const CriterionReport pd = compactness_index(DiscMeasure::power_density(1.0), *classical(), 2, 2, 2, 0.5, L);
    CHECK(pd.verdict == Verdict::vanishing);
    CHECK(pd.index_value == pd.ring_trend.back().value);
}

TEST_CASE("qlp index of u dA is the area norm") {
    for (Reference ref : {Reference::u_dA, Reference::dA}) {
        QlpOptions opt;
        opt.reference = ref;
        const CriterionReport rep = qlp_index(DiscMeasure::weighted_area(Weight::constant()), *classical(), 4, 2, 2, 0.5, opt);
        const double R = rep.values.at("r_last");
        CHECK(rep.index_value == doctest::Approx(std::pow(kPi * R * R, 0.25)).epsilon(1e-10));
        CHECK(rep.verdict == Verdict::finite);
        CHECK(rep.index_value == doctest::Approx(std::pow(kPi, 0.25)).epsilon(1e-3));
    }
}

TEST_CASE("qlp index of (1-|z|^2) dA against the oracle") {
    const CriterionReport rep = qlp_index(DiscMeasure::power_density(1.0), *classical(), 4, 2, 2, 0.5);
    CHECK(rep.verdict == Verdict::finite);
    const double R = rep.values.at("r_last");
    const double I = radial_oracle([](double rho) { return std::pow(hat_index_oracle(rho, 0.5, 1.0, 0.0), 4.0); }, R);
    CHECK(rep.values.at("integral") == doctest::Approx(I).epsilon(1e-8));

    QlpOptions opt;
    opt.use_berezin = true;
    const CriterionReport tilde = qlp_index(DiscMeasure::power_density(1.0), *fine(), 4, 2, 2, 0.5, opt);
    CHECK(tilde.verdict == Verdict::finite);
    const double Rt = tilde.values.at("r_last");
    const double It = radial_oracle([](double rho) { return std::pow(oracle::berezin_power_density(rho, 1.0), 4.0); }, Rt);
    CHECK(tilde.values.at("integral") == doctest::Approx(It).epsilon(1e-6));
}

TEST_CASE("qlp index diverges for a non-integrable average") {
    const DiscMeasure mu = DiscMeasure::weighted_area(Weight::standard(-0.9));
    const CriterionReport rep = qlp_index(mu, *classical(), 4, 2, 2, 0.5);
    CHECK(rep.verdict == Verdict::divergent);
}

TEST_CASE("Carleson sub-indices for u dA") {
    const std::vector<DiscPoint> anchors = {DiscPoint(0.5, 0.0), DiscPoint(0.3, -0.6), DiscPoint(-0.85, 0.1)};
    const double r = 0.5;
    const CriterionReport rep = carleson_test(DiscMeasure::weighted_area(Weight::constant()), Weight::constant(), 2, 2, r, 2.0,
                                              2.0, anchors);
    CHECK(rep.values.at("index_b") == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.values.at("index_c") == doctest::Approx(1.0).epsilon(1e-8));
    // int ((1-|a|^2)/|1-z conj(a)|)^4 dA = pi (1-|a|^2)^2
    double ie = 0.0;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        const double a2 = std::norm(anchors[k]);
        const double o = std::pow(1.0 - r * r * a2, 2) / (r * r);
        CHECK(rep.children[2].per_point[k].value == doctest::Approx(o).epsilon(1e-6));
        ie = std::max(ie, o);
    }
    CHECK(rep.values.at("index_e") == doctest::Approx(ie).epsilon(1e-6));
    CHECK(rep.verdict == Verdict::finite);
}

TEST_CASE("Carleson sub-indices for (1-|z|^2) dA against the oracle") {
    const DiscPoint a(0.6, -0.5);
    const CriterionReport rep =
        carleson_test(DiscMeasure::power_density(1.0), Weight::constant(), 2, 2, 0.5, 2.0, 2.0, {a});
    CHECK(rep.values.at("index_b") ==
          doctest::Approx(oracle::carleson_set_mass(a, 1.0) / oracle::carleson_set_mass(a, 0.0)).epsilon(1e-6));
    CHECK(rep.values.at("index_c") == doctest::Approx(hat_index_oracle(a, 0.5, 1.0, 0.0)).epsilon(1e-8));
}

TEST_CASE("atoms on the ladder: growing and vanishing Carleson trends") {
    const BoundaryLadder L = boundary_ladder(10, 8);
    const DiscMeasure grow = ladder_atoms(L, 1.0), fade = ladder_atoms(L, 3.0);
    const CriterionReport g = carleson_test(grow, Weight::constant(), 2, 2, 0.5, 2.0, 2.0, {0.0}, &L);
    CHECK(g.verdict == Verdict::divergent);
    CHECK(g.children[1].verdict == Verdict::divergent);
    CHECK(vanishing_carleson_test(grow, Weight::constant(), 2, 2, L).verdict == Verdict::divergent);

    const CriterionReport f = vanishing_carleson_test(fade, Weight::constant(), 2, 2, L);
    CHECK(f.verdict != Verdict::divergent);
    for (std::size_t j = 2; j < f.ring_trend.size(); ++j) CHECK(f.ring_trend[j].value < f.ring_trend[j - 1].value);
}

TEST_CASE("vanishing Carleson test for (1-|z|^2) dA") {
    const BoundaryLadder L = boundary_ladder(20, 8);
    const CriterionReport rep = vanishing_carleson_test(DiscMeasure::power_density(1.0), Weight::constant(), 2, 2, L);
    CHECK(rep.verdict == Verdict::vanishing);
    const DiscPoint a = L.ring(3)[0];
    CHECK(rep.per_point[3 * 8].value ==
          doctest::Approx(oracle::carleson_set_mass(a, 1.0) / oracle::carleson_set_mass(a, 0.0)).epsilon(1e-6));
    CHECK(vanishing_carleson_test(DiscMeasure::weighted_area(Weight::constant()), Weight::constant(), 2, 2, L).verdict ==
          Verdict::finite);
}

TEST_CASE("theorem consistency, p <= q") {
    const BoundaryLadder L = boundary_ladder(20, 8);
    const CriterionReport id =
        theorem_consistency_report(DiscMeasure::weighted_area(Weight::constant()), fine(), 2, 2, 2, 0.5, 1.0, L);
    CHECK(id.verdict == Verdict::finite);
    CHECK(id.values.at("agree") == 1.0);
    for (const ConsistencyRow& row : consistency_rows(id)) {
        CHECK(row.applicable);
        CHECK(row.bounded);
        CHECK_FALSE(row.compact);
    }

    const DiscMeasure atom = DiscMeasure::atomic({{cplx(0.1, 0.2), 1.0}});
    // spectral condition is computed only for p = q = 2
    const CriterionReport at = theorem_consistency_report(atom, fine(), 3, 3, 2, 0.5, 1.0, L);
    CHECK(at.verdict == Verdict::vanishing);
    CHECK(consistency_rows(at).size() == 4);
    CHECK_FALSE(consistency_rows(at)[0].applicable);
    // p = 2, q = 4: mu~ / u(Delta)^(1/4) decays like (1-rho)^(3/2) on the resolved rings
    const CriterionReport at24 = theorem_consistency_report(atom, fine(), 2, 4, 2, 0.5, 1.0, L);
    const std::vector<RingValue>& tr = at24.children[1].ring_trend;
    REQUIRE(tr.size() >= 6);
    CHECK(tr[tr.size() - 2].value / tr.back().value == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.02));
    const std::vector<ConsistencyRow> rows24 = consistency_rows(at24);
    CHECK(rows24[2].compact);
    CHECK(rows24[3].compact);

    const CriterionReport pd = theorem_consistency_report(DiscMeasure::power_density(1.0), fine(), 2, 2, 2, 0.5, 1.0, L);
    const std::vector<ConsistencyRow> rows = consistency_rows(pd);
    for (const ConsistencyRow& row : rows) CHECK(row.bounded);
    // diagonal Toeplitz spectrum 1/(n+2)
    CHECK(pd.children[0].values.at("lambda_max") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pd.children[0].values.at("lambda_min_N") == doctest::Approx(1.0 / 4098.0).epsilon(1e-8));
    CHECK(rows[0].compact);
    CHECK(rows[2].compact);
    CHECK(rows[3].compact);
}

TEST_CASE("theorem consistency, q < p") {
    const BoundaryLadder L = boundary_ladder(20, 8);
    const CriterionReport pd = theorem_consistency_report(DiscMeasure::power_density(1.0), fine(), 4, 2, 2, 0.5, 1.0, L);
    const std::vector<ConsistencyRow> rows = consistency_rows(pd);
    CHECK(rows.size() == 6);
    for (const ConsistencyRow& row : rows) {
        CHECK(row.bounded);
        CHECK(row.bounded == row.compact);
    }
    CHECK(pd.verdict == Verdict::vanishing);

    const CriterionReport id =
        theorem_consistency_report(DiscMeasure::weighted_area(Weight::constant()), fine(), 4, 2, 2, 0.5, 1.0, L);
    for (const ConsistencyRow& row : consistency_rows(id)) CHECK(row.bounded == row.compact);
}

TEST_CASE("indices are homogeneous and monotone in the measure") {
    const BoundaryLadder L = boundary_ladder(8, 8);
    const DiscMeasure a = DiscMeasure::power_density(1.0);
    const DiscMeasure b = DiscMeasure::sum({a, DiscMeasure::atomic({{cplx(0.6, 0.3), 0.2}, {-0.4, 0.1}})});
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{2.0, 4.0}}) {
        const double ia = boundedness_index(a, *classical(), p, q, 2, 0.5, grid, L).index_value;
        const double ic = boundedness_index(a.scaled(2.5), *classical(), p, q, 2, 0.5, grid, L).index_value;
        const double ib = boundedness_index(b, *classical(), p, q, 2, 0.5, grid, L).index_value;
        CHECK(ic == doctest::Approx(2.5 * ia).epsilon(1e-12));
        CHECK(ib >= ia);
        const CriterionReport ca = carleson_test(a, Weight::constant(), p, q, 0.5, 2.0, 2.0, grid);
        const CriterionReport cc = carleson_test(a.scaled(2.5), Weight::constant(), p, q, 0.5, 2.0, 2.0, grid);
        const CriterionReport cb = carleson_test(b, Weight::constant(), p, q, 0.5, 2.0, 2.0, grid);
        for (const char* key : {"index_b", "index_c", "index_e"}) {
            CHECK(cc.values.at(key) == doctest::Approx(2.5 * ca.values.at(key)).epsilon(1e-12));
            CHECK(cb.values.at(key) >= ca.values.at(key));
        }
    }
}

TEST_CASE("at p = q the boundedness index is the disk sub-index") {
    const BoundaryLadder L = boundary_ladder(6, 8);
    const DiscMeasure mu = DiscMeasure::sum({DiscMeasure::power_density(0.7), DiscMeasure::atomic({{cplx(0.2, 0.1), 0.3}})});
    const CriterionReport b = boundedness_index(mu, *classical(), 2, 2, 2, 0.4, grid, L);
    const CriterionReport c = carleson_test(mu, Weight::constant(), 2, 2, 0.4, 2.0, 2.0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(b.per_point[k].value == doctest::Approx(c.children[1].per_point[k].value).epsilon(1e-8));
}

TEST_CASE("Berezin transform is bounded by the Toeplitz norm") {
    const BoundaryLadder L = boundary_ladder(8, 8);
    for (const DiscMeasure& mu : {DiscMeasure::power_density(1.0), DiscMeasure::power_density(0.4),
                                  DiscMeasure::atomic({{cplx(0.3, 0.3), 1.0}, {-0.5, 2.0}})}) {
        const double top = spectrum(assemble(mu, classical())).eigenvalues.front();
        const CriterionReport rep = boundedness_index(mu, *classical(), 2, 2, 2, 0.5, grid, L);
        CHECK(rep.values.at("index_tilde") <= top * (1.0 + 1e-9));
        CHECK(rep.values.at("index_tilde") > 0.0);
    }
}

TEST_CASE("criteria domain errors") {
    const BoundaryLadder L = boundary_ladder(4, 4);
    const DiscMeasure mu = DiscMeasure::power_density(1.0);
    CHECK_THROWS_AS(boundedness_index(mu, *classical(), 4, 2, 2, 0.5, grid, L), DomainError);
    CHECK_THROWS_AS(qlp_index(mu, *classical(), 2, 4, 2, 0.5), DomainError);
    CHECK_THROWS_AS(carleson_test(mu, Weight::constant(), 2, 2, 0.5, 0.5, 2.0, grid), DomainError);
    CHECK_THROWS_AS(carleson_test(mu, Weight::constant(), 2, 2, 0.5, 2.0, 1.0, grid), DomainError);
    CHECK_THROWS_AS(theorem_consistency_report(mu, classical(), -1, 2, 2, 0.5, 2.0, L), DomainError);
}
