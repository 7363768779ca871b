#include "bergman_lab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman_lab/space.hpp"

namespace bl {

DiscMeasure DiscMeasure::atomic(std::vector<Atom> atoms) {
    for (const Atom& a : atoms) {
        require_in_disc(a.at, "atomic measure");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw ConfigError("atom masses must be positive and finite");
    }
    DiscMeasure mu;
    mu.kind_ = MeasureKind::atomic;
    mu.atoms_ = std::move(atoms);
    return mu;
}

DiscMeasure DiscMeasure::weighted_area(Weight u) {
    DiscMeasure mu;
    mu.kind_ = MeasureKind::weighted_area;
    mu.weight_ = std::move(u);
    return mu;
}

DiscMeasure DiscMeasure::power_density(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("power_density needs t > 0");
    DiscMeasure mu;
    mu.kind_ = MeasureKind::power_density;
    mu.t_ = t;
    return mu;
}

DiscMeasure DiscMeasure::density_grid(int n, std::vector<double> samples, std::string source) {
    for (double v : samples)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("density samples must be finite and nonnegative");
    DiscMeasure mu;
    mu.kind_ = MeasureKind::density_grid;
    mu.weight_ = Weight::grid(n, std::move(samples), std::move(source));
    return mu;
}

DiscMeasure DiscMeasure::sum(std::vector<DiscMeasure> parts) {
    if (parts.empty()) throw ConfigError("sum of measures needs at least one part");
    DiscMeasure mu;
    mu.kind_ = MeasureKind::sum;
    mu.parts_ = std::move(parts);
    return mu;
}

DiscMeasure DiscMeasure::scaled(double c) const {
    if (!(c > 0.0)) throw ConfigError("measure scale must be positive");
    DiscMeasure mu = *this;
    mu.scale_ *= c;
    return mu;
}

bool DiscMeasure::radial() const {
    switch (kind_) {
        case MeasureKind::atomic:
            for (const Atom& a : atoms_)
                if (a.at != DiscPoint(0.0, 0.0)) return false;
            return true;
        case MeasureKind::weighted_area: return weight_.radial();
        case MeasureKind::power_density: return true;
        case MeasureKind::density_grid: return false;
        case MeasureKind::sum:
            for (const auto& p : parts_)
                if (!p.radial()) return false;
            return true;
    }
    return false;
}

bool DiscMeasure::has_density() const {
    switch (kind_) {
        case MeasureKind::atomic: return false;
        case MeasureKind::sum:
            for (const auto& p : parts_)
                if (p.has_density()) return true;
            return false;
        default: return true;
    }
}

double DiscMeasure::density(DiscPoint z, double s) const {
    switch (kind_) {
        case MeasureKind::atomic: return 0.0;
        case MeasureKind::weighted_area: return scale_ * weight_.at(z, s);
        case MeasureKind::power_density: return scale_ * std::pow(s, t_);
        case MeasureKind::density_grid: return scale_ * weight_.at(z, s);
        case MeasureKind::sum: {
            double v = 0.0;
            for (const auto& p : parts_) v += p.density(z, s);
            return scale_ * v;
        }
    }
    return 0.0;
}

double DiscMeasure::radial_density(double r, double s) const { return density(DiscPoint(r, 0.0), s); }

std::string DiscMeasure::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case MeasureKind::atomic: os << "atomic(" << atoms_.size() << " atoms)"; break;
        case MeasureKind::weighted_area: os << "weighted_area(" << weight_.describe() << ")"; break;
        case MeasureKind::power_density: os << "power_density(t=" << t_ << ")"; break;
        case MeasureKind::density_grid: os << "density_grid(n=" << weight_.grid_size() << ")"; break;
        case MeasureKind::sum:
            os << "sum(";
            for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "+" : "") << parts_[i].describe();
            os << ")";
            break;
    }
    if (scale_ != 1.0) os << "*" << scale_;
    return os.str();
}

std::vector<Atom> all_atoms(const DiscMeasure& mu) {
    std::vector<Atom> out;
    if (mu.kind() == MeasureKind::atomic) {
        for (Atom a : mu.atoms()) {
            a.mass *= mu.scale();
            out.push_back(a);
        }
    } else if (mu.kind() == MeasureKind::sum) {
        for (const auto& p : mu.parts())
            for (Atom a : all_atoms(p)) {
                a.mass *= mu.scale();
                out.push_back(a);
            }
    }
    return out;
}

cplx integrate_measure(const DiscMeasure& mu, const std::function<cplx(DiscPoint, double)>& f, const DiscQuadrature& q) {
    cplx total = 0.0;
    for (const Atom& a : all_atoms(mu)) {
        const cplx v = f(a.at, one_minus_abs2(a.at));
        if (!std::isfinite(std::abs(v))) throw EvaluationError("integrand is not finite at atom " + format_point(a.at));
        total += a.mass * v;
    }
    if (mu.has_density())
        total += integrate(q, [&](const QuadNode& n) { return f(n.z, n.s) * mu.density(n.z, n.s); });
    return total;
}

double integrate_measure_real(const DiscMeasure& mu, const std::function<double(DiscPoint, double)>& f,
                              const DiscQuadrature& q) {
    double total = 0.0;
    for (const Atom& a : all_atoms(mu)) {
        const double v = f(a.at, one_minus_abs2(a.at));
        if (!std::isfinite(v)) throw EvaluationError("integrand is not finite at atom " + format_point(a.at));
        total += a.mass * v;
    }
    if (mu.has_density())
        total += integrate_real(q, [&](const QuadNode& n) { return f(n.z, n.s) * mu.density(n.z, n.s); });
    return total;
}

double integrate_measure_real(const DiscMeasure& mu, const std::function<double(DiscPoint, double)>& f,
                              int resolution) {
    return integrate_measure_real(mu, f, disc_rule(1.0, resolution, 2 * resolution));
}

double total_mass(const DiscMeasure& mu, int resolution) {
    return integrate_measure_real(mu, [](DiscPoint, double) { return 1.0; }, resolution);
}

double disk_mass(const DiscMeasure& mu, DiscPoint z, double r, int resolution) {
    const PseudoDisk D = pseudo_disk(z, r);
    double m = 0.0;
    for (const Atom& a : all_atoms(mu))
        if (pseudo_distance(z, a.at) < r) m += a.mass;
    if (mu.has_density()) {
        const DiscQuadrature q = region_quadrature(Region::euclidean_disk(D.euclid_center, D.euclid_radius), resolution);
        m += integrate_real(q, [&](const QuadNode& n) { return mu.density(n.z, n.s); });
    }
    return m;
}

double carleson_mass(const DiscMeasure& mu, DiscPoint a, int resolution) {
    const CarlesonSet S{a};
    double m = 0.0;
    for (const Atom& at : all_atoms(mu))
        if (S.contains(at.at)) m += at.mass;
    if (mu.has_density()) {
        const DiscQuadrature q = region_quadrature(Region::carleson_set(a), resolution);
        m += integrate_real(q, [&](const QuadNode& n) { return mu.density(n.z, n.s); });
    }
    return m;
}

cplx integrate_polynomial_product(const DiscMeasure& mu, const std::vector<cplx>& f, const std::vector<cplx>& g,
                                  const DiscQuadrature& q) {
    if (mu.kind() == MeasureKind::sum) {
        std::vector<cplx> parts;
        for (const DiscMeasure& part : mu.parts()) parts.push_back(integrate_polynomial_product(part, f, g, q));
        return mu.scale() * pairwise_sum(parts);
    }
    if (mu.kind() == MeasureKind::weighted_area && has_exact_moments(mu.weight())) {
        const int n = static_cast<int>(std::max(f.size(), g.size())) - 1;
        if (n < 0) return 0.0;
        const MomentMatrix H = exact_moments(mu.weight(), n);
        std::vector<cplx> rows(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            std::vector<cplx> t(g.size());
            for (std::size_t l = 0; l < g.size(); ++l) t[l] = H(static_cast<int>(j), static_cast<int>(l)) * std::conj(g[l]);
            rows[j] = f[j] * pairwise_sum(t);
        }
        return mu.scale() * pairwise_sum(rows);
    }
    return integrate_measure(
        mu,
        [&](DiscPoint w, double) {
            cplx fv = 0.0, gv = 0.0;
            for (std::size_t j = f.size(); j-- > 0;) fv = fv * w + f[j];
            for (std::size_t j = g.size(); j-- > 0;) gv = gv * w + g[j];
            return fv * std::conj(gv);
        },
        q);
}

MomentMatrix measure_moments(const DiscMeasure& mu, const DiscQuadrature& q, int degree) {
    MomentMatrix H;
    if (mu.kind() == MeasureKind::sum) {
        H.n = degree;
        H.a.assign(static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 1), cplx(0.0));
        for (const DiscMeasure& part : mu.parts()) {
            const MomentMatrix P = measure_moments(part, q, degree);
            for (std::size_t i = 0; i < H.a.size(); ++i) H.a[i] += mu.scale() * P.a[i];
        }
        return H;
    }
    if (mu.kind() == MeasureKind::weighted_area && has_exact_moments(mu.weight())) {
        H = exact_moments(mu.weight(), degree);
        for (cplx& v : H.a) v *= mu.scale();
        return H;
    }
    if (mu.has_density()) {
        H = polar_moments(q, degree, [&](const QuadNode& n) { return mu.density(n.z, n.s); });
    } else {
        H.n = degree;
        H.a.assign(static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 1), cplx(0.0));
    }
    const std::size_t dim = static_cast<std::size_t>(degree + 1);
    for (const Atom& a : all_atoms(mu)) {
        std::vector<cplx> pw(dim);
        cplx p = 1.0;
        for (std::size_t j = 0; j < dim; ++j) {
            pw[j] = p;
            p *= a.at;
        }
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t l = 0; l < dim; ++l) H.a[j * dim + l] += a.mass * pw[j] * std::conj(pw[l]);
    }
    return H;
}

std::vector<double> measure_radial_moments(const DiscMeasure& mu, const DiscQuadrature& q, int degree) {
    if (!mu.radial()) throw std::logic_error("measure_radial_moments on a non-radial measure");
    std::vector<double> H(static_cast<std::size_t>(degree + 1), 0.0);
    if (mu.has_density()) H = radial_moments(q, degree, [&](double r, double s) { return mu.radial_density(r, s); });
    for (const Atom& a : all_atoms(mu)) H[0] += a.mass;
    return H;
}

KernelSquareCheck kernel_square_integrability_check(const DiscMeasure& mu, const KernelModel& m,
                                                    const std::vector<DiscPoint>& probes) {
    KernelSquareCheck out;
    out.probes = probes;
    out.values.resize(probes.size());
    out.half_values.resize(probes.size());
    parallel_for(probes.size(), [&](std::size_t k) {
        require_in_disc(probes[k], "kernel_square_integrability_check");
        const std::vector<cplx> full = m.kernel_coeffs(probes[k]);
        const std::vector<cplx> half = m.kernel_coeffs(probes[k], m.degree() / 2);
        out.values[k] = integrate_measure_real(mu, [&](DiscPoint w, double) { return std::norm(eval_poly(full, w)); }, m.rule());
        out.half_values[k] = integrate_measure_real(mu, [&](DiscPoint w, double) { return std::norm(eval_poly(half, w)); }, m.rule());
    });
    out.finite = true;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (!std::isfinite(out.values[k])) out.finite = false;
        if (out.values[k] > 0.0)
            out.max_growth = std::max(out.max_growth, std::abs(out.values[k] - out.half_values[k]) / out.values[k]);
    }
    return out;
}

}  // namespace bl
