#include "bergman_lab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bergman_lab/toeplitz.hpp"

namespace bl {

const char* transform_name(TransformKind k) {
    switch (k) {
        case TransformKind::berezin: return "berezin";
        case TransformKind::t_berezin: return "t_berezin";
        case TransformKind::average: return "average";
    }
    return "berezin";
}

namespace {

double kernel_power_integral(const DiscMeasure& mu, const KernelModel& m, double t, DiscPoint z) {
    const std::vector<cplx> b = m.kernel_coeffs(z);
    return integrate_measure_real(
        mu,
        [&](DiscPoint w, double) {
            const double a = std::abs(eval_poly(b, w));
            return t == 2.0 ? a * a : std::pow(a, t);
        },
        m.rule());
}

}  // namespace

double berezin(const DiscMeasure& mu, const KernelModel& m, DiscPoint z) {
    require_in_disc(z, "berezin");
    return BerezinEvaluator(mu, m, 2.0)(z);
}

double t_berezin(const DiscMeasure& mu, const KernelModel& m, double t, DiscPoint z) {
    require_in_disc(z, "t_berezin");
    if (!(t > 0.0)) throw DomainError("t_berezin: t must be positive");
    const double norm = kernel_norm(m, z, t);
    return kernel_power_integral(mu, m, t, z) / std::pow(norm, t);
}

double average_function(const DiscMeasure& mu, const Weight& u, double r, DiscPoint z) {
    require_in_disc(z, "average_function");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("average_function: r must lie in (0,1)");
    return disk_mass(mu, z, r, 24) / mass(u, Region::pseudo_disk(z, r), 24);
}

BerezinEvaluator::BerezinEvaluator(const DiscMeasure& mu, const KernelModel& m, double t) : mu_(mu), m_(m), t_(t) {
    if (!(t_ > 0.0)) throw DomainError("t_berezin: t must be positive");
    if (!mu_.has_density()) {
        route_ = Route::atomic;
        atoms_ = all_atoms(mu_);
    } else if (t_ == 2.0 && m_.radial() && mu_.radial()) {
        route_ = Route::diagonal;
        const std::vector<double> H = measure_radial_moments(mu_, m_.rule(), m_.degree());
        const std::vector<double>& G = m_.diagonal_norms();
        lambda_.resize(H.size());
        for (std::size_t n = 0; n < H.size(); ++n) lambda_[n] = H[n] / G[n];
    } else if (t_ == 2.0 && m_.degree() <= 1500) {
        route_ = Route::matrix;
        const ModelPtr view(&m_, [](const KernelModel*) {});
        M_ = assemble(mu_, view).dense();
    } else {
        route_ = Route::quadrature;
    }
}

const char* BerezinEvaluator::route() const {
    switch (route_) {
        case Route::atomic: return "atomic";
        case Route::diagonal: return "diagonal";
        case Route::matrix: return "matrix";
        case Route::quadrature: return "quadrature";
    }
    return "quadrature";
}

double BerezinEvaluator::compute(DiscPoint z) const {
    const double denom = t_ == 2.0 ? m_.diag(z) : std::pow(kernel_norm(m_, z, t_), t_);
    switch (route_) {
        case Route::atomic: {
            const std::vector<cplx> b = m_.kernel_coeffs(z);
            std::vector<double> terms;
            for (const Atom& a : atoms_) {
                const double k = std::abs(eval_poly(b, a.at));
                terms.push_back(a.mass * (t_ == 2.0 ? k * k : std::pow(k, t_)));
            }
            return pairwise_sum(terms) / denom;
        }
        case Route::diagonal: {
            const std::vector<double>& G = m_.diagonal_norms();
            const double x = std::norm(z);
            std::vector<double> num(G.size()), den(G.size());
            double p = 1.0;
            for (std::size_t n = 0; n < G.size(); ++n) {
                den[n] = p / G[n];
                num[n] = lambda_[n] * den[n];
                p *= x;
            }
            return pairwise_sum(num) / pairwise_sum(den);
        }
        case Route::matrix: {
            const std::vector<cplx> e = m_.basis(z);
            Eigen::VectorXcd v(static_cast<Eigen::Index>(e.size()));
            for (std::size_t i = 0; i < e.size(); ++i) v(static_cast<Eigen::Index>(i)) = std::conj(e[i]);
            return v.dot(M_ * v).real() / denom;
        }
        case Route::quadrature: return kernel_power_integral(mu_, m_, t_, z) / denom;
    }
    return 0.0;
}

double BerezinEvaluator::operator()(DiscPoint z) const {
    require_in_disc(z, "berezin");
    return compute(z);
}

std::vector<double> BerezinEvaluator::evaluate(const std::vector<DiscPoint>& points) const {
    for (DiscPoint z : points) require_in_disc(z, "berezin");
    std::vector<double> out(points.size());
    if (route_ == Route::quadrature && m_.radial() && mu_.radial()) {
        std::map<double, std::size_t> slot;
        for (DiscPoint z : points) slot.emplace(std::abs(z), 0);
        std::vector<double> radii;
        for (auto& [r, i] : slot) {
            i = radii.size();
            radii.push_back(r);
        }
        std::vector<double> vals(radii.size());
        parallel_for(radii.size(), [&](std::size_t i) { vals[i] = compute(DiscPoint(radii[i], 0.0)); });
        for (std::size_t k = 0; k < points.size(); ++k) out[k] = vals[slot.at(std::abs(points[k]))];
        return out;
    }
    parallel_for(points.size(), [&](std::size_t k) { out[k] = compute(points[k]); });
    return out;
}

TransformProfile berezin_profile(const DiscMeasure& mu, const KernelModel& m, const std::vector<DiscPoint>& grid) {
    TransformProfile prof;
    prof.kind = TransformKind::berezin;
    prof.grid = grid;
    prof.values = BerezinEvaluator(mu, m, 2.0).evaluate(grid);
    prof.parameters["degree"] = m.degree();
    return prof;
}

TransformProfile t_berezin_profile(const DiscMeasure& mu, const KernelModel& m, double t,
                                   const std::vector<DiscPoint>& grid) {
    TransformProfile prof;
    prof.kind = TransformKind::t_berezin;
    prof.grid = grid;
    prof.parameters["t"] = t;
    prof.parameters["degree"] = m.degree();
    if (t != 2.0) {
        prof.values = BerezinEvaluator(mu, m, t).evaluate(grid);
        return prof;
    }
    prof.values.resize(grid.size());
    if (m.radial() && mu.radial()) {
        for (DiscPoint z : grid) require_in_disc(z, "t_berezin");
        std::map<double, std::size_t> slot;
        for (DiscPoint z : grid) slot.emplace(std::abs(z), 0);
        std::vector<double> radii;
        for (auto& [r, i] : slot) {
            i = radii.size();
            radii.push_back(r);
        }
        std::vector<double> vals(radii.size());
        parallel_for(radii.size(), [&](std::size_t i) { vals[i] = t_berezin(mu, m, t, DiscPoint(radii[i], 0.0)); });
        for (std::size_t k = 0; k < grid.size(); ++k) prof.values[k] = vals[slot.at(std::abs(grid[k]))];
        return prof;
    }
    parallel_for(grid.size(), [&](std::size_t k) { prof.values[k] = t_berezin(mu, m, t, grid[k]); });
    return prof;
}

TransformProfile average_profile(const DiscMeasure& mu, const Weight& u, double r, const std::vector<DiscPoint>& grid) {
    TransformProfile prof;
    prof.kind = TransformKind::average;
    prof.grid = grid;
    prof.parameters["r"] = r;
    prof.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) { prof.values[k] = average_function(mu, u, r, grid[k]); });
    return prof;
}

CriterionReport comparability_report(const DiscMeasure& mu, const KernelModel& m, double t, double r,
                                     const Lattice& grid, const std::vector<double>& lp_exponents) {
    if (grid.points.empty()) throw DomainError("comparability_report: empty grid");
    CriterionReport rep;
    rep.name = "comparability";
    rep.parameters["t"] = t;
    rep.parameters["r"] = r;
    rep.parameters["degree"] = m.degree();

    std::vector<DiscPoint> pts;
    for (DiscPoint a : grid.points)
        if (resolved(m, a)) pts.push_back(a);
    if (pts.empty()) throw DomainError("comparability_report: no grid point is resolved by the model");
    rep.values["points_used"] = static_cast<double>(pts.size());
    rep.values["points_unresolved"] = static_cast<double>(grid.points.size() - pts.size());

    const std::vector<double> tilde = BerezinEvaluator(mu, m, t).evaluate(pts);
    std::vector<double> hat(pts.size()), ud(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        hat[k] = average_function(mu, m.weight(), r, pts[k]);
        ud[k] = mass(m.weight(), Region::pseudo_disk(pts[k], r), 24);
    });

    double lower = INFINITY, max_tilde = 0.0, sup_hat = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (hat[k] > 0.0) {
            const double ratio = tilde[k] / hat[k];
            lower = std::min(lower, ratio);
            rep.per_point.push_back({pts[k], ratio});
        }
        max_tilde = std::max(max_tilde, tilde[k]);
        sup_hat = std::max(sup_hat, hat[k]);
    }
    rep.values["lower_band"] = lower;
    rep.values["max_tilde"] = max_tilde;
    rep.values["sup_hat"] = sup_hat;
    rep.values["upper_ratio"] = sup_hat > 0.0 ? max_tilde / sup_hat : (max_tilde > 0.0 ? INFINITY : 0.0);

    for (double p : lp_exponents) {
        std::vector<double> a(pts.size()), b(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) {
            a[k] = std::pow(tilde[k], p) * ud[k];
            b[k] = std::pow(hat[k], p) * ud[k];
        }
        const double na = std::pow(pairwise_sum(a), 1.0 / p);
        const double nb = std::pow(pairwise_sum(b), 1.0 / p);
        const std::string key = "lp_" + std::to_string(p).substr(0, 4);
        rep.values[key + "_tilde"] = na;
        rep.values[key + "_hat"] = nb;
        rep.values[key + "_ratio"] = nb > 0.0 ? na / nb : 0.0;
    }
    rep.index_value = lower;
    rep.verdict = std::isfinite(lower) && std::isfinite(max_tilde) ? Verdict::finite : Verdict::inconclusive;
    return rep;
}

}  // namespace bl
