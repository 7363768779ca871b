#include "bergman_lab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman_lab/toeplitz.hpp"
#include "bergman_lab/transforms.hpp"

namespace bl {

namespace {

void check_order(double p, double q, const char* what) {
    if (!(p > 0.0 && q > 0.0)) throw DomainError(std::string(what) + ": p and q must be positive");
    if (q < p) throw DomainError(std::string(what) + ": needs p <= q");
}

// mu^_r, u(Delta) at every point; mu~_t at resolved points (negative otherwise).
struct PointProfile {
    std::vector<DiscPoint> points;
    std::vector<double> hat, ud, tilde;
};

PointProfile point_profile(const DiscMeasure& mu, const KernelModel& m, double t, double r,
                           std::vector<DiscPoint> points) {
    PointProfile P;
    P.points = std::move(points);
    const std::size_t n = P.points.size();
    P.hat.resize(n);
    P.ud.resize(n);
    parallel_for(n, [&](std::size_t k) {
        P.ud[k] = mass(m.weight(), Region::pseudo_disk(P.points[k], r), 24);
        P.hat[k] = disk_mass(mu, P.points[k], r, 24) / P.ud[k];
    });
    std::vector<DiscPoint> kp;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
        if (resolved(m, P.points[k])) {
            kp.push_back(P.points[k]);
            idx.push_back(k);
        }
    const std::vector<double> tv = BerezinEvaluator(mu, m, t).evaluate(kp);
    P.tilde.assign(n, -1.0);
    for (std::size_t i = 0; i < idx.size(); ++i) P.tilde[idx[i]] = tv[i];
    return P;
}

// Per-ring maxima over the ladder block starting at offset; rings with an
// unavailable value (negative) are dropped.
std::vector<RingValue> ring_maxima(const BoundaryLadder& ladder, std::size_t offset, const std::vector<double>& v) {
    std::vector<RingValue> out;
    const std::size_t per = static_cast<std::size_t>(ladder.samples_per_ring);
    for (std::size_t j = 0; j < ladder.radii.size(); ++j) {
        double mx = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < per; ++k) {
            const double x = v[offset + j * per + k];
            if (x < 0.0) ok = false;
            else mx = std::max(mx, x);
        }
        if (ok) out.push_back({ladder.radii[j], mx});
    }
    return out;
}

std::vector<double> scaled_index(const PointProfile& P, const std::vector<double>& base, double e) {
    std::vector<double> out(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] < 0.0 ? -1.0 : base[k] / std::pow(P.ud[k], e);
    return out;
}

Verdict boundedness_verdict(const std::vector<RingValue>& trend) {
    const Verdict v = classify_trend(trend);
    return v == Verdict::vanishing ? Verdict::finite : v;
}

CriterionReport index_report(const std::string& name, const PointProfile& P, const std::vector<double>& values,
                             std::size_t ladder_offset, const BoundaryLadder& ladder, bool compactness) {
    CriterionReport rep;
    rep.name = name;
    double mx = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < 0.0) continue;
        rep.per_point.push_back({P.points[k], values[k]});
        mx = std::max(mx, values[k]);
    }
    rep.ring_trend = ring_maxima(ladder, ladder_offset, values);
    rep.index_value = compactness ? (rep.ring_trend.empty() ? 0.0 : rep.ring_trend.back().value) : mx;
    rep.values["max"] = mx;
    rep.values["rings"] = static_cast<double>(rep.ring_trend.size());
    rep.verdict = compactness ? classify_trend(rep.ring_trend) : boundedness_verdict(rep.ring_trend);
    return rep;
}

std::vector<DiscPoint> concat(const std::vector<DiscPoint>& a, const std::vector<DiscPoint>& b) {
    std::vector<DiscPoint> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

CriterionReport boundedness_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                                  const std::vector<DiscPoint>& grid, const BoundaryLadder& ladder) {
    check_order(p, q, "boundedness_index");
    const double e = 1.0 / p - 1.0 / q;
    const PointProfile P = point_profile(mu, m, t, r, concat(grid, ladder.points()));
    CriterionReport rep = index_report("boundedness", P, scaled_index(P, P.hat, e), grid.size(), ladder, false);
    CriterionReport tilde = index_report("boundedness_tilde", P, scaled_index(P, P.tilde, e), grid.size(), ladder, false);
    rep.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}};
    tilde.parameters = rep.parameters;
    rep.values["index_hat"] = rep.index_value;
    rep.values["index_tilde"] = tilde.index_value;
    rep.children.push_back(std::move(tilde));
    return rep;
}

CriterionReport compactness_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                                  const BoundaryLadder& ladder) {
    check_order(p, q, "compactness_index");
    const double e = 1.0 / p - 1.0 / q;
    const PointProfile P = point_profile(mu, m, t, r, ladder.points());
    CriterionReport rep = index_report("compactness", P, scaled_index(P, P.hat, e), 0, ladder, true);
    CriterionReport tilde = index_report("compactness_tilde", P, scaled_index(P, P.tilde, e), 0, ladder, true);
    rep.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}};
    tilde.parameters = rep.parameters;
    rep.values["global_max"] = max_value(rep.ring_trend);
    rep.children.push_back(std::move(tilde));
    return rep;
}

const char* reference_name(Reference ref) { return ref == Reference::u_dA ? "u_dA" : "dA"; }

CriterionReport qlp_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                          const QlpOptions& opt) {
    if (!(q > 0.0 && q < p)) throw DomainError("qlp_index: needs 0 < q < p");
    if (opt.first_level < 1 || opt.last_level < opt.first_level + 2)
        throw DomainError("qlp_index: need at least three sweep levels");
    const double E = p * q / (p - q);
    CriterionReport rep;
    rep.name = opt.use_berezin ? "qlp_tilde" : "qlp_hat";
    rep.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}, {"exponent", E}};
    rep.notes["reference"] = reference_name(opt.reference);

    int last = opt.last_level;
    if (opt.use_berezin)
        while (last > opt.first_level && !resolved(m, DiscPoint(1.0 - std::ldexp(1.0, -last), 0.0))) --last;
    const double R = 1.0 - std::ldexp(1.0, -last);
    const std::vector<RadialNode> nodes = radial_panel_rule(R);
    const bool radial = m.radial() && mu.radial();
    const int angular = radial ? 1 : 64;

    std::vector<DiscPoint> pts;
    for (const RadialNode& n : nodes)
        for (int k = 0; k < angular; ++k) pts.push_back(std::polar(n.radius, 2.0 * kPi * k / angular));
    std::vector<double> f(pts.size());
    if (opt.use_berezin) {
        f = BerezinEvaluator(mu, m, t).evaluate(pts);
    } else {
        parallel_for(pts.size(), [&](std::size_t i) { f[i] = average_function(mu, m.weight(), r, pts[i]); });
    }

    // Panels have 16 nodes and end exactly at R_k = 1 - 2^-k.
    std::vector<double> ring(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<double> terms(static_cast<std::size_t>(angular));
        for (int k = 0; k < angular; ++k) {
            const std::size_t j = i * static_cast<std::size_t>(angular) + static_cast<std::size_t>(k);
            const double nu = opt.reference == Reference::u_dA ? m.weight().at(pts[j], nodes[i].s) : 1.0;
            terms[static_cast<std::size_t>(k)] = std::pow(f[j], E) * nu;
        }
        ring[i] = pairwise_sum(terms) * nodes[i].weight * 2.0 * kPi / angular;
    }
    std::vector<double> seq;
    for (int k = opt.first_level; k <= last; ++k) {
        const std::size_t upto = static_cast<std::size_t>(k) * 16;
        const double I = pairwise_sum(ring.data(), std::min(upto, ring.size()));
        seq.push_back(I);
        rep.ring_trend.push_back({1.0 - std::ldexp(1.0, -k), std::pow(I, 1.0 / E)});
    }
    rep.index_value = rep.ring_trend.back().value;
    rep.values["norm"] = rep.index_value;
    rep.values["integral"] = seq.back();
    rep.values["r_last"] = R;
    rep.verdict = classify_sequence(seq);
    return rep;
}

CriterionReport carleson_test(const DiscMeasure& mu, const Weight& u, double p, double q, double r, double s, double p0,
                              const std::vector<DiscPoint>& anchors, const BoundaryLadder* ladder) {
    check_order(p, q, "carleson_test");
    if (!(p0 > 1.0)) throw DomainError("carleson_test: p0 must exceed 1");
    if (!(s >= 2.0 * p0 / p)) throw DomainError("carleson_test: needs s >= 2 p0 / p");
    if (anchors.empty()) throw DomainError("carleson_test: no anchors");
    const double e = q / p;
    std::vector<DiscPoint> pts = anchors;
    if (ladder) {
        const std::vector<DiscPoint> lp = ladder->points();
        pts.insert(pts.end(), lp.begin(), lp.end());
    }
    const std::size_t n = pts.size();
    std::vector<double> b(n), c(n), g(n);
    parallel_for(n, [&](std::size_t k) {
        const DiscPoint a = pts[k];
        b[k] = carleson_mass(mu, a, 48) / std::pow(mass(u, Region::carleson_set(a), 48), e);
        const double ud = mass(u, Region::pseudo_disk(a, r), 24);
        c[k] = disk_mass(mu, a, r, 24) / std::pow(ud, e);
        const double sa = one_minus_abs2(a);
        const DiscQuadrature rule = mobius_disc_rule(a, 64, 128);
        const double integral = integrate_measure_real(
            mu, [&](DiscPoint z, double) { return std::pow(sa / std::abs(1.0 - z * std::conj(a)), q * s); }, rule);
        g[k] = integral / std::pow(ud, e);
    });

    auto sub = [&](const std::string& name, const std::vector<double>& v) {
        CriterionReport child;
        child.name = name;
        double mx = 0.0;
        for (std::size_t k = 0; k < anchors.size(); ++k) {
            child.per_point.push_back({pts[k], v[k]});
            mx = std::max(mx, v[k]);
        }
        child.index_value = mx;
        if (ladder) {
            child.ring_trend = ring_maxima(*ladder, anchors.size(), v);
            child.verdict = boundedness_verdict(child.ring_trend);
        } else {
            child.verdict = std::isfinite(mx) ? Verdict::finite : Verdict::divergent;
        }
        return child;
    };
    CriterionReport rep;
    rep.name = "carleson";
    rep.parameters = {{"p", p}, {"q", q}, {"r", r}, {"s", s}, {"p0", p0}};
    rep.children.push_back(sub("carleson_b", b));
    rep.children.push_back(sub("carleson_c", c));
    rep.children.push_back(sub("carleson_e", g));
    const double ib = rep.children[0].index_value, ic = rep.children[1].index_value, ie = rep.children[2].index_value;
    rep.values["index_b"] = ib;
    rep.values["index_c"] = ic;
    rep.values["index_e"] = ie;
    rep.values["ratio_b_c"] = ic > 0.0 ? ib / ic : 0.0;
    rep.values["ratio_e_c"] = ic > 0.0 ? ie / ic : 0.0;
    rep.values["ratio_b_e"] = ie > 0.0 ? ib / ie : 0.0;
    // pointwise ratio bands over anchors where both sides are positive
    auto band = [&](const std::vector<double>& x, const std::vector<double>& y, const std::string& key) {
        double lo = INFINITY, hi = 0.0;
        for (std::size_t k = 0; k < anchors.size(); ++k)
            if (x[k] > 0.0 && y[k] > 0.0) {
                lo = std::min(lo, x[k] / y[k]);
                hi = std::max(hi, x[k] / y[k]);
            }
        if (hi > 0.0) {
            rep.values[key + "_band_min"] = lo;
            rep.values[key + "_band_max"] = hi;
        }
    };
    band(b, c, "b_c");
    band(g, c, "e_c");
    band(b, g, "b_e");
    rep.ring_trend = rep.children[1].ring_trend;
    rep.index_value = ic;
    rep.verdict = rep.children[1].verdict;
    for (const auto& ch : rep.children)
        if (ch.verdict == Verdict::divergent) rep.verdict = Verdict::divergent;
    return rep;
}

CriterionReport vanishing_carleson_test(const DiscMeasure& mu, const Weight& u, double p, double q,
                                        const BoundaryLadder& ladder) {
    check_order(p, q, "vanishing_carleson_test");
    const double e = q / p;
    const std::vector<DiscPoint> pts = ladder.points();
    std::vector<double> v(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        v[k] = carleson_mass(mu, pts[k], 48) / std::pow(mass(u, Region::carleson_set(pts[k]), 48), e);
    });
    CriterionReport rep;
    rep.name = "vanishing_carleson";
    rep.parameters = {{"p", p}, {"q", q}};
    for (std::size_t k = 0; k < pts.size(); ++k) rep.per_point.push_back({pts[k], v[k]});
    rep.ring_trend = ring_maxima(ladder, 0, v);
    rep.index_value = rep.ring_trend.back().value;
    rep.values["global_max"] = max_value(rep.ring_trend);
    rep.verdict = classify_trend(rep.ring_trend);
    return rep;
}

namespace {

void add_condition(CriterionReport& rep, CriterionReport child, const std::string& cond, bool applicable, bool bounded,
                   bool compact) {
    rep.values[cond + ".applicable"] = applicable ? 1.0 : 0.0;
    if (applicable) {
        rep.values[cond + ".bounded"] = bounded ? 1.0 : 0.0;
        rep.values[cond + ".compact"] = compact ? 1.0 : 0.0;
    }
    child.notes["condition"] = cond;
    rep.children.push_back(std::move(child));
}

}  // namespace

CriterionReport theorem_consistency_report(const DiscMeasure& mu, ModelPtr m, double p, double q, double t, double r,
                                           double s, const BoundaryLadder& ladder) {
    if (!(p > 0.0 && q > 0.0)) throw DomainError("theorem_consistency_report: p and q must be positive");
    CriterionReport rep;
    rep.name = "theorem_consistency";
    rep.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}, {"s", s}};
    const Weight& u = m->weight();

    if (p <= q) {
        rep.notes["theorem"] = "boundedness/compactness, p <= q";
        const double e = 1.0 / p - 1.0 / q;
        if (p == 2.0 && q == 2.0) {
            const ToeplitzMatrix T = assemble(mu, m);
            const int N = T.size() - 1;
            const std::vector<double> full = spectrum(T).eigenvalues;
            const std::vector<double> half = spectrum(T.leading(N / 2)).eigenvalues;
            const double top = full.front();
            const bool bounded = std::isfinite(top) && std::abs(top - half.front()) <= 0.05 * top;
            const bool compact = full.back() <= 1e-12 * top || full.back() / half.back() < 0.95;
            CriterionReport child;
            child.name = "spectral";
            child.index_value = top;
            child.values["lambda_max"] = top;
            child.values["lambda_min_N"] = full.back();
            child.values["lambda_min_half"] = half.back();
            child.verdict = !bounded ? Verdict::divergent : (compact ? Verdict::vanishing : Verdict::finite);
            add_condition(rep, std::move(child), "i", true, bounded, compact);
        } else {
            CriterionReport child;
            child.name = "spectral";
            child.notes["reason"] = "operator norm between different exponents is not computed";
            add_condition(rep, std::move(child), "i", false, false, false);
        }
        const PointProfile P = point_profile(mu, *m, t, r, ladder.points());
        for (int which = 0; which < 2; ++which) {
            const bool tilde = which == 0;
            CriterionReport c = index_report(tilde ? "tilde_index" : "hat_index", P,
                                             scaled_index(P, tilde ? P.tilde : P.hat, e), 0, ladder, true);
            c.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}};
            const Verdict b = boundedness_verdict(c.ring_trend);
            const bool bounded = b != Verdict::divergent;
            const bool compact = c.verdict == Verdict::vanishing;
            add_condition(rep, std::move(c), tilde ? "ii" : "iii", true, bounded, compact);
        }
        if (q > 1.0) {
            const double qc = q / (q - 1.0);
            const double gamma = (p + qc) / (p * qc);
            CriterionReport c = vanishing_carleson_test(mu, u, s, s * gamma, ladder);
            c.parameters["s"] = s;
            c.parameters["exponent"] = gamma;
            const bool bounded = boundedness_verdict(c.ring_trend) != Verdict::divergent;
            const bool compact = c.verdict == Verdict::vanishing;
            add_condition(rep, std::move(c), "iv", true, bounded, compact);
        } else {
            CriterionReport c;
            c.name = "carleson_boxes";
            c.notes["reason"] = "q' undefined for q <= 1";
            add_condition(rep, std::move(c), "iv", false, false, false);
        }
    } else {
        rep.notes["theorem"] = "q < p: bounded <=> compact";
        for (int which = 0; which < 2; ++which)
            for (Reference ref : {Reference::u_dA, Reference::dA}) {
                QlpOptions opt;
                opt.reference = ref;
                opt.use_berezin = which == 0;
                CriterionReport c = qlp_index(mu, *m, p, q, t, r, opt);
                const bool ok = c.verdict == Verdict::finite;
                add_condition(rep, std::move(c), std::string(which == 0 ? "iii" : "iv") + "." + reference_name(ref), true,
                              ok, ok);
            }
        const double gamma = (p + 1.0 - p / q) / p;
        const PointProfile P = point_profile(mu, *m, t, r, ladder.points());
        std::vector<double> ratio(P.points.size());
        for (std::size_t k = 0; k < ratio.size(); ++k) ratio[k] = P.hat[k] * P.ud[k] / std::pow(P.ud[k], gamma);
        CriterionReport c = index_report("carleson_disk", P, ratio, 0, ladder, true);
        c.parameters = {{"p", p}, {"q", q}, {"r", r}, {"exponent", gamma}};
        const bool bounded = boundedness_verdict(c.ring_trend) != Verdict::divergent;
        const bool vanishing = c.verdict == Verdict::vanishing;
        add_condition(rep, c, "v", true, bounded, bounded);
        c.name = "vanishing_carleson_disk";
        add_condition(rep, c, "vi", true, vanishing, vanishing);
    }

    bool first = true, agree = true, b0 = false, c0 = false;
    std::ostringstream diag;
    for (const ConsistencyRow& row : consistency_rows(rep)) {
        if (!row.applicable) continue;
        diag << row.condition << ":" << (row.bounded ? "B" : "-") << (row.compact ? "C" : "-") << " ";
        if (first) {
            b0 = row.bounded;
            c0 = row.compact;
            first = false;
        } else if (row.bounded != b0 || row.compact != c0) {
            agree = false;
        }
    }
    rep.notes["matrix"] = diag.str();
    if (first || !agree) {
        rep.verdict = Verdict::inconclusive;
        if (!agree) rep.notes["diagnostic"] = "conditions disagree: " + diag.str();
    } else {
        rep.verdict = !b0 ? Verdict::divergent : (c0 ? Verdict::vanishing : Verdict::finite);
    }
    rep.values["agree"] = agree && !first ? 1.0 : 0.0;
    return rep;
}

std::vector<ConsistencyRow> consistency_rows(const CriterionReport& rep) {
    std::vector<ConsistencyRow> rows;
    for (const auto& child : rep.children) {
        auto it = child.notes.find("condition");
        if (it == child.notes.end()) continue;
        ConsistencyRow row;
        row.condition = it->second;
        row.applicable = rep.values.at(row.condition + ".applicable") != 0.0;
        if (row.applicable) {
            row.bounded = rep.values.at(row.condition + ".bounded") != 0.0;
            row.compact = rep.values.at(row.condition + ".compact") != 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bl
