#include "bergman_lab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bl::verify {

bool CriterionResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool Suite::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
}

namespace {

void check(CriterionResult& res, std::string name, double value, const std::string& rel, double bound,
           double bound_hi = 0.0) {
    Check c{std::move(name), value, rel, bound, bound_hi, false};
    if (rel == "<") c.passed = value < bound;
    else if (rel == "<=") c.passed = value <= bound;
    else if (rel == ">") c.passed = value > bound;
    else if (rel == ">=") c.passed = value >= bound;
    else if (rel == "==") c.passed = value == bound;
    else if (rel == "in") c.passed = value >= bound && value <= bound_hi;
    res.checks.push_back(std::move(c));
}

// Golden-angle spiral of n points filling |z| <= R.
std::vector<DiscPoint> spiral(std::size_t n, double R) {
    std::vector<DiscPoint> out;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(std::polar(R * std::sqrt((k + 0.5) / n), golden * static_cast<double>(k)));
    return out;
}

double rel_change(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<double> trailing_ratios(const std::vector<RingValue>& trend, std::size_t count) {
    std::vector<double> out;
    if (trend.size() < count + 1) return out;
    for (std::size_t k = trend.size() - count; k < trend.size(); ++k) out.push_back(trend[k].value / trend[k - 1].value);
    return out;
}

CriterionResult classical_kernel() {
    CriterionResult res{1, "classical kernel against 1/(pi(1-conj(w)z)^2)", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    const std::vector<DiscPoint> pts = spiral(20, 0.7);
    std::vector<double> err(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const DiscPoint w = pts[i];
        const std::vector<cplx> b = m->kernel_coeffs(w);
        double e = 0.0;
        for (DiscPoint z : pts) {
            const cplx exact = 1.0 / (kPi * (1.0 - std::conj(w) * z) * (1.0 - std::conj(w) * z));
            e = std::max(e, std::abs(eval_poly(b, z) - exact) / std::abs(exact));
        }
        err[i] = e;
    });
    check(res, "max_relative_error", *std::max_element(err.begin(), err.end()), "<", 1e-6);
    return res;
}

CriterionResult standard_kernel() {
    CriterionResult res{2, "standard weight kernel against (a+1)/(pi(1-|z|^2)^(2+a)), a=1", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::standard(1.0), 200);
    check(res, "K(0,0)_error", std::abs(m->diag(0.0) - 2.0 / kPi), "<", 1e-6);
    double e = 0.0;
    for (DiscPoint z : spiral(200, 0.6)) {
        const double s = one_minus_abs2(z);
        const double exact = 2.0 / (kPi * s * s * s);
        e = std::max(e, std::abs(m->diag(z) - exact) / exact);
    }
    check(res, "max_relative_error_diagonal", e, "<", 1e-5);
    return res;
}

CriterionResult reproducing() {
    CriterionResult res{3, "reproducing property for random polynomials", {}, {}};
    std::mt19937_64 rng(20240531);
    std::uniform_int_distribution<int> deg(0, 50);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), uni(0.0, 1.0);
    std::vector<std::vector<cplx>> polys(50);
    for (auto& f : polys) {
        f.resize(static_cast<std::size_t>(deg(rng)) + 1);
        for (cplx& c : f) c = cplx(unit(rng), unit(rng));
    }
    std::vector<DiscPoint> pts(20);
    for (DiscPoint& w : pts) w = std::polar(0.9 * std::sqrt(uni(rng)), 2.0 * kPi * uni(rng));
    for (const Weight& u : {Weight::constant(), Weight::standard(1.0)}) {
        const ModelPtr m = build_kernel_model(u, default_degree(u));
        const std::vector<double> r = reproducing_residuals(*m, polys, pts);
        check(res, "max_residual_" + u.describe(), *std::max_element(r.begin(), r.end()), "<", 1e-7);
    }
    return res;
}

CriterionResult berezin_normalization() {
    CriterionResult res{4, "Berezin transform of u dA is 1; t = 2 form coincides", {}, {}};
    const Lattice L = build_lattice(0.5, 0.995);
    for (const Weight& u : {Weight::constant(), Weight::standard(1.0)}) {
        const ModelPtr m = build_kernel_model(u, default_degree(u));
        const DiscMeasure mu = DiscMeasure::weighted_area(u);
        const TransformProfile b = berezin_profile(mu, *m, L.points);
        const TransformProfile t2 = t_berezin_profile(mu, *m, 2.0, L.points);
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t k = 0; k < L.points.size(); ++k) {
            e1 = std::max(e1, std::abs(b.values[k] - 1.0));
            e2 = std::max(e2, std::abs(t2.values[k] - b.values[k]));
        }
        check(res, "max_deviation_from_1_" + u.describe(), e1, "<", 1e-6);
        check(res, "max_t2_difference_" + u.describe(), e2, "<", 1e-8);
    }
    res.notes.push_back("lattice points: " + std::to_string(L.points.size()));
    return res;
}

CriterionResult toeplitz_identity() {
    CriterionResult res{5, "Toeplitz matrix of u dA is the identity", {}, {}};
    for (const auto& [u, N] : std::vector<std::pair<Weight, int>>{
             {Weight::constant(), 200}, {Weight::standard(1.0), 120}, {Weight::power_one_minus_z(0.5), 60}}) {
        const ModelPtr m = build_kernel_model(u, N);
        const ToeplitzMatrix T = assemble(DiscMeasure::weighted_area(u), m);
        const Eigen::MatrixXcd D = T.dense() - Eigen::MatrixXcd::Identity(T.size(), T.size());
        check(res, "max_entry_deviation_" + u.describe(), D.cwiseAbs().maxCoeff(), "<", 1e-8);
        double e = 0.0;
        for (double v : spectrum(T).eigenvalues) e = std::max(e, std::abs(v - 1.0));
        check(res, "max_eigenvalue_deviation_" + u.describe(), e, "<", 1e-8);
    }
    return res;
}

CriterionResult rank_one() {
    CriterionResult res{6, "rank-one spectrum of 2 delta_0", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    const DiscMeasure mu = DiscMeasure::atomic({{0.0, 2.0}});
    const ToeplitzMatrix T = assemble(mu, m);
    const std::vector<double> ev = spectrum(T).eigenvalues;
    check(res, "lambda_1_error", std::abs(ev.front() - 2.0 / kPi), "<", 1e-8);
    double rest = 0.0;
    for (std::size_t k = 1; k < ev.size(); ++k) rest = std::max(rest, std::abs(ev[k]));
    check(res, "max_other_eigenvalue", rest, "<", 1e-8);
    check(res, "trace_residual", trace_identity_check(T, mu, *m), "<", 1e-10);
    return res;
}

CriterionResult trace_identity() {
    CriterionResult res{7, "trace identity for power_density(1)", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 120);
    const DiscMeasure mu = DiscMeasure::power_density(1.0);
    const ToeplitzMatrix T = assemble(mu, m);
    const double sum = pairwise_sum(spectrum(T).eigenvalues);
    check(res, "relative_trace_residual", trace_identity_check(T, mu, *m) / sum, "<", 1e-6);
    return res;
}

CriterionResult lattice_certificates() {
    CriterionResult res{8, "lattice certificates", {}, {}};
    for (double r : {0.2, 0.5}) {
        const Lattice L = build_lattice(r, 0.99, 10000);
        const LatticeCertificate& c = L.certificate;
        std::ostringstream tag;
        tag << "_r" << r;
        check(res, "quarter_disks_disjoint" + tag.str(), c.disjoint ? 1.0 : 0.0, "==", 1.0);
        check(res, "covering_fraction" + tag.str(), c.covering_fraction(), "==", 1.0);
        check(res, "max_multiplicity" + tag.str(), c.max_multiplicity, "<=", L.multiplicity_bound);
        res.notes.push_back("r=" + std::to_string(r) + ": " + std::to_string(L.points.size()) + " points, " +
                            std::to_string(c.audit_points) + " audit points");
    }
    return res;
}

CriterionResult comparability_bands() {
    CriterionResult res{9, "Berezin/average comparability bands for power_density(1)", {}, {}};
    const DiscMeasure mu = DiscMeasure::power_density(1.0);
    double lower[2], upper[2];
    for (int level = 0; level < 2; ++level) {
        const ModelPtr m = build_kernel_model(Weight::constant(), 200 << level);
        const Lattice L = build_lattice(0.3 / (1 << level), 0.995);
        const CriterionReport rep = comparability_report(mu, *m, 2.0, 0.3, L, {});
        lower[level] = rep.values.at("lower_band");
        upper[level] = rep.values.at("max_tilde") / rep.values.at("sup_hat");
        const std::string tag = level == 0 ? "" : "_refined";
        check(res, "lower_band" + tag, lower[level], ">", 0.1);
        check(res, "max_tilde_over_sup_hat" + tag, upper[level], "<=", 10.0);
    }
    check(res, "lower_band_change", rel_change(lower[0], lower[1]), "<", 0.2);
    check(res, "upper_ratio_change", rel_change(upper[0], upper[1]), "<", 0.2);
    return res;
}

std::pair<double, double> diag_band(const KernelModel& m, const Lattice& L, double r) {
    std::vector<DiscPoint> pts;
    for (DiscPoint a : L.points)
        if (resolved(m, a)) pts.push_back(a);
    std::vector<double> v(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { v[k] = m.diag(pts[k]) * mass(m.weight(), Region::pseudo_disk(pts[k], r), 24); });
    return {*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end())};
}

CriterionResult diagonal_estimate() {
    CriterionResult res{10, "diagonal kernel times u(Delta(z,1/2))", {}, {}};
    const double r = 0.5;
    {
        const ModelPtr m = build_kernel_model(Weight::constant(), 200);
        const auto [lo, hi] = diag_band(*m, build_lattice(0.5, 0.995), r);
        const double a = r * r, b = r * r / ((1 - r * r) * (1 - r * r));
        check(res, "constant_band_min", lo, ">=", a * (1 - 1e-3));
        check(res, "constant_band_max", hi, "<=", b * (1 + 1e-3));
    }
    // (2/pi) int_{|x|<r} (1-|x|^2) |1 - rho x|^-6 dA(x) is K(z,z) u(Delta(z,r)) at |z| = rho.
    const DiscQuadrature disc = disc_rule(r, 64, 128);
    auto standard_value = [&](double rho) {
        return 2.0 / kPi * integrate_real(disc, [&](const QuadNode& n) { return n.s / std::pow(std::abs(1.0 - rho * n.z), 6); });
    };
    const double a = standard_value(0.0), b = standard_value(1.0);
    double lo[2], hi[2];
    for (int level = 0; level < 2; ++level) {
        const ModelPtr m = build_kernel_model(Weight::standard(1.0), 120 << level);
        std::tie(lo[level], hi[level]) = diag_band(*m, build_lattice(0.5 / (1 << level), 0.995), r);
        const std::string tag = level == 0 ? "" : "_refined";
        check(res, "standard_band_min" + tag, lo[level], ">=", a * (1 - 1e-3));
        check(res, "standard_band_max" + tag, hi[level], "<=", b * (1 + 1e-3));
    }
    check(res, "standard_band_min_change", rel_change(lo[0], lo[1]), "<", 0.2);
    check(res, "standard_band_max_change", rel_change(hi[0], hi[1]), "<", 0.2);
    return res;
}

CriterionResult boundedness_threshold() {
    CriterionResult res{11, "boundedness threshold for power_density(t), p=2, q=4", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    const BoundaryLadder ladder = boundary_ladder(20, 8);
    const CriterionReport b6 = boundedness_index(DiscMeasure::power_density(0.6), *m, 2, 4, 2, 0.5, {}, ladder);
    const std::vector<double> r6 = trailing_ratios(b6.ring_trend, 2);
    check(res, "t0.6_min_trailing_ratio", *std::min_element(r6.begin(), r6.end()), ">=", 0.9);
    check(res, "t0.6_max_trailing_ratio", *std::max_element(r6.begin(), r6.end()), "<=", 1.1);
    check(res, "t0.6_bounded", b6.verdict != Verdict::divergent ? 1.0 : 0.0, "==", 1.0);
    const CriterionReport b4 = boundedness_index(DiscMeasure::power_density(0.4), *m, 2, 4, 2, 0.5, {}, ladder);
    const std::vector<double> r4 = trailing_ratios(b4.ring_trend, 3);
    check(res, "t0.4_min_ring_growth", *std::min_element(r4.begin(), r4.end()), ">=", 2.0);
    check(res, "t0.4_divergent", b4.verdict == Verdict::divergent ? 1.0 : 0.0, "==", 1.0);
    return res;
}

CriterionResult compactness() {
    CriterionResult res{12, "compactness for power_density(0.6) and the identity", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 200);
    const BoundaryLadder ladder = boundary_ladder(20, 8);
    const CriterionReport c6 = compactness_index(DiscMeasure::power_density(0.6), *m, 2, 4, 2, 0.5, ladder);
    const auto& tr = c6.ring_trend;
    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(tr.begin(), tr.end(), [](auto& a, auto& b) { return a.value < b.value; }) - tr.begin());
    double rises = 0.0;
    for (std::size_t k = peak + 1; k < tr.size(); ++k) rises += tr[k].value > tr[k - 1].value ? 1.0 : 0.0;
    check(res, "t0.6_increases_after_peak", rises, "==", 0.0);
    check(res, "t0.6_last_over_max", tr.back().value / max_value(tr), "<", 1e-2);
    const DiscMeasure id = DiscMeasure::weighted_area(Weight::constant());
    const CriterionReport ci = compactness_index(id, *m, 2, 2, 2, 0.5, ladder);
    double dev = 0.0;
    for (const RingValue& rv : ci.ring_trend) dev = std::max(dev, std::abs(rv.value - 1.0));
    check(res, "identity_trend_deviation", dev, "<", 1e-9);
    check(res, "identity_not_vanishing", ci.verdict != Verdict::vanishing ? 1.0 : 0.0, "==", 1.0);
    const CriterionReport en = essential_norm_estimate(id, *m, 2, 2, 2, 0.5, ladder);
    check(res, "identity_essential_norm_error", std::abs(en.index_value - 1.0), "<", 1e-9);
    return res;
}

CriterionResult schatten_threshold() {
    CriterionResult res{13, "Schatten threshold for power_density(t), h(x)=x^2", {}, {}};
    const ModelPtr m = build_kernel_model(Weight::constant(), 8000);
    const SchattenFunction h = SchattenFunction::power(2.0);
    for (double t : {0.8, 0.3}) {
        const DiscMeasure mu = DiscMeasure::power_density(t);
        const CriterionReport si = schatten_integral(mu, *m, h, 1.0, 0.5);
        const CriterionReport sm = schatten_membership(assemble(mu, m), h, 1.0);
        const double ratio = si.values.at("ratio_r_max_to_first");
        std::ostringstream tag;
        tag << "t" << t;
        if (t > 0.5) {
            check(res, tag.str() + "_sweep_change", std::abs(ratio - 1.0), "<", 0.05);
            check(res, tag.str() + "_membership_convergent", sm.verdict == Verdict::finite ? 1.0 : 0.0, "==", 1.0);
        } else {
            check(res, tag.str() + "_sweep_growth", ratio, ">=", 2.0);
            check(res, tag.str() + "_membership_divergent", sm.verdict == Verdict::divergent ? 1.0 : 0.0, "==", 1.0);
        }
        res.notes.push_back(tag.str() + ": integral verdict " + verdict_name(si.verdict) + ", membership verdict " +
                            verdict_name(sm.verdict));
    }
    return res;
}

struct Cell {
    std::string label;
    DiscMeasure mu;
    double p, q;
    bool ambiguous;
};

CriterionResult consistency_matrix() {
    CriterionResult res{14, "theorem consistency matrix", {}, {}};
    const Weight u = Weight::constant();
    const ModelPtr m = build_kernel_model(u, 4096);
    const BoundaryLadder ladder = boundary_ladder(20, 8);
    const DiscMeasure atoms = DiscMeasure::atomic({{DiscPoint(0.0, 0.0), 1.0}, {DiscPoint(0.3, 0.2), 0.5}, {DiscPoint(-0.4, 0.1), 0.25}});
    const std::vector<Cell> cells = {
        {"weighted_area_p2_q2", DiscMeasure::weighted_area(u), 2, 2, false},
        {"power_density_0.6_p2_q4", DiscMeasure::power_density(0.6), 2, 4, false},
        {"power_density_0.4_p2_q4", DiscMeasure::power_density(0.4), 2, 4, false},
        {"compact_atomic_p4_q2", atoms, 4, 2, false},
        {"power_density_1_p4_q2", DiscMeasure::power_density(1.0), 4, 2, false},
        {"weighted_area_p4_q2", DiscMeasure::weighted_area(u), 4, 2, true},
    };
    for (const Cell& c : cells) {
        const CriterionReport rep = theorem_consistency_report(c.mu, m, c.p, c.q, 2.0, 0.5, 1.0, ladder);
        const std::string line = c.label + ": " + verdict_name(rep.verdict) + " [" + rep.notes.at("matrix") + "]";
        if (c.ambiguous) {
            res.notes.push_back("known ambiguity (excluded) " + line);
            continue;
        }
        res.notes.push_back(line);
        check(res, c.label + "_agree", rep.values.at("agree"), "==", 1.0);
    }
    return res;
}

}  // namespace

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return classical_kernel();
        case 2: return standard_kernel();
        case 3: return reproducing();
        case 4: return berezin_normalization();
        case 5: return toeplitz_identity();
        case 6: return rank_one();
        case 7: return trace_identity();
        case 8: return lattice_certificates();
        case 9: return comparability_bands();
        case 10: return diagonal_estimate();
        case 11: return boundedness_threshold();
        case 12: return compactness();
        case 13: return schatten_threshold();
        case 14: return consistency_matrix();
    }
    throw DomainError("verify: no acceptance criterion " + std::to_string(id));
}

Suite run_suite(const std::function<void(const std::string&)>& log) {
    Suite s;
    for (int id = 1; id <= kCriteria; ++id) {
        s.criteria.push_back(run_criterion(id));
        if (log) log(std::string(s.criteria.back().passed() ? "PASS" : "FAIL") + " " + std::to_string(id) + " " +
                     s.criteria.back().title);
    }
    return s;
}

io::json to_json(const Suite& s) {
    io::json crit = io::json::array();
    std::size_t passed = 0;
    for (const CriterionResult& c : s.criteria) {
        io::json checks = io::json::array();
        for (const Check& k : c.checks) {
            io::json j = {{"name", k.name}, {"value", io::number(k.value)}, {"relation", k.relation}, {"bound", io::number(k.bound)}};
            if (k.relation == "in") j["bound_hi"] = io::number(k.bound_hi);
            j["passed"] = k.passed;
            checks.push_back(j);
        }
        crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"checks", checks}, {"notes", c.notes}});
        passed += c.passed() ? 1 : 0;
    }
    return {{"criteria", crit}, {"passed", passed}, {"failed", s.criteria.size() - passed}, {"all_passed", s.all_passed()}};
}

std::string summary(const Suite& s) {
    std::ostringstream os;
    for (const CriterionResult& c : s.criteria) {
        os << (c.passed() ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << "\n";
        for (const Check& k : c.checks)
            if (!k.passed) os << "      " << k.name << " = " << k.value << " (needs " << k.relation << " " << k.bound << ")\n";
        for (const std::string& n : c.notes) os << "      " << n << "\n";
    }
    return os.str();
}

}  // namespace bl::verify
