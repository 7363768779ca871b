#include "bergman_lab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bl {

Weight Weight::constant(double value) {
    if (!(value > 0.0)) throw ConfigError("constant weight must be positive");
    Weight u;
    u.kind_ = WeightKind::constant;
    u.scale_ = value;
    return u;
}

Weight Weight::standard(double alpha) {
    if (!(alpha > -1.0)) throw ConfigError("standard weight needs alpha > -1");
    Weight u;
    u.kind_ = WeightKind::standard;
    u.param_ = alpha;
    return u;
}

Weight Weight::power_one_minus_z(double gamma) {
    if (!std::isfinite(gamma)) throw ConfigError("power_one_minus_z needs a finite gamma");
    Weight u;
    u.kind_ = WeightKind::power_one_minus_z;
    u.param_ = gamma;
    return u;
}

Weight Weight::grid(int n, std::vector<double> samples, std::string source) {
    if (n < 2) throw ConfigError("grid weight needs n >= 2");
    if (samples.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw ConfigError("grid weight needs n*n samples");
    Weight u;
    u.kind_ = WeightKind::grid;
    u.grid_n_ = n;
    u.samples_ = std::move(samples);
    u.source_ = std::move(source);
    return u;
}

Weight Weight::scaled(double c) const {
    if (!(c > 0.0)) throw ConfigError("weight scale must be positive");
    Weight u = *this;
    u.scale_ *= c;
    return u;
}

double Weight::at(DiscPoint z, double s) const {
    switch (kind_) {
        case WeightKind::constant: return scale_;
        case WeightKind::standard: return scale_ * std::pow(s, param_);
        case WeightKind::power_one_minus_z: return scale_ * std::pow(std::abs(1.0 - z), param_);
        case WeightKind::grid: {
            const double h = 2.0 / (grid_n_ - 1);
            const double fx = std::clamp((z.real() + 1.0) / h, 0.0, double(grid_n_ - 1));
            const double fy = std::clamp((z.imag() + 1.0) / h, 0.0, double(grid_n_ - 1));
            const int i = std::min(static_cast<int>(fx), grid_n_ - 2);
            const int j = std::min(static_cast<int>(fy), grid_n_ - 2);
            const double tx = fx - i, ty = fy - j;
            auto S = [&](int a, int b) { return samples_[static_cast<std::size_t>(a) * static_cast<std::size_t>(grid_n_) + static_cast<std::size_t>(b)]; };
            const double v = (1 - tx) * (1 - ty) * S(i, j) + tx * (1 - ty) * S(i + 1, j) + (1 - tx) * ty * S(i, j + 1) +
                             tx * ty * S(i + 1, j + 1);
            return scale_ * std::max(v, 1e-12);
        }
    }
    return scale_;
}

double Weight::radial_at(double r, double s) const {
    if (!radial()) throw std::logic_error("radial_at on a non-radial weight");
    return at(DiscPoint(r, 0.0), s);
}

std::string Weight::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case WeightKind::constant: os << "constant(" << scale_ << ")"; break;
        case WeightKind::standard: os << "standard(alpha=" << param_ << ")"; break;
        case WeightKind::power_one_minus_z: os << "power_one_minus_z(gamma=" << param_ << ")"; break;
        case WeightKind::grid: os << "grid(n=" << grid_n_ << ")"; break;
    }
    if (kind_ != WeightKind::constant && scale_ != 1.0) os << "*" << scale_;
    return os.str();
}

bool has_exact_moments(const Weight& u) { return u.kind() == WeightKind::power_one_minus_z; }

MomentMatrix exact_moments(const Weight& u, int degree) {
    if (!has_exact_moments(u)) throw std::logic_error("exact_moments: no closed form for " + u.describe());
    // |1-z|^g = sum_j c_j z^j sum_k c_k conj(z)^k, c_j = (-1)^j binom(g/2, j), and
    // int z^m conj(z)^n dA = pi/(m+1) delta_mn, so for d = j - l >= 0
    // H(j,l) = pi sum_i c_i c_{i+d} / (j+i+1). Terms decay like i^{-3-g}; the tail
    // is removed by one Richardson step between J/2 and J terms.
    const int N = degree;
    const double a = 0.5 * u.parameter();
    const double order = 2.0 + u.parameter();
    const std::size_t J = std::max<std::size_t>(4096, 8 * static_cast<std::size_t>(N));
    std::vector<double> c(J + static_cast<std::size_t>(N) + 1);
    c[0] = 1.0;
    for (std::size_t j = 0; j + 1 < c.size(); ++j) c[j + 1] = c[j] * (static_cast<double>(j) - a) / static_cast<double>(j + 1);
    MomentMatrix H;
    H.n = N;
    const std::size_t dim = static_cast<std::size_t>(N + 1);
    H.a.assign(dim * dim, cplx(0.0));
    const double gain = std::pow(2.0, order);
    parallel_for(dim, [&](std::size_t d) {
        std::vector<double> terms(J);
        for (std::size_t l = 0; l + d < dim; ++l) {
            const std::size_t j = l + d;
            for (std::size_t i = 0; i < J; ++i) terms[i] = c[i] * c[i + d] / static_cast<double>(j + i + 1);
            const double half = pairwise_sum(terms.data(), J / 2);
            const double full = half + pairwise_sum(terms.data() + J / 2, J - J / 2);
            const double v = u.scale() * kPi * (gain * full - half) / (gain - 1.0);
            H.a[j * dim + l] = v;
            H.a[l * dim + j] = v;
        }
    });
    return H;
}

double mass(const Weight& u, const DiscQuadrature& q) {
    return integrate_real(q, [&](const QuadNode& n) { return u.at(n.z, n.s); });
}

double mass(const Weight& u, const Region& region, int resolution) {
    return mass(u, region_quadrature(region, resolution));
}

namespace {

double joint_average(const Weight& u, double p, const Region& region, int resolution) {
    const double e = 1.0 / (p - 1.0);
    const ConvergedIntegral area = converged_integral(region, resolution, [](const QuadNode&) { return 1.0; });
    const ConvergedIntegral mu = converged_integral(region, resolution, [&](const QuadNode& n) { return u.at(n.z, n.s); });
    const ConvergedIntegral mv =
        converged_integral(region, resolution, [&](const QuadNode& n) { return std::pow(u.at(n.z, n.s), -e); });
    if (mu.divergent || mv.divergent) return std::numeric_limits<double>::infinity();
    const double a = area.value;
    return (mu.value / a) * std::pow(mv.value / a, p - 1.0);
}

void check_p(double p) {
    if (!(p > 1.0)) throw DomainError("weight constants need p > 1");
}

WeightConstantReport assemble(double p, const std::vector<DiscPoint>& anchors, const BoundaryLadder& ladder,
                              const std::function<double(DiscPoint)>& local) {
    WeightConstantReport rep;
    rep.p = p;
    std::vector<DiscPoint> all = anchors;
    const std::vector<DiscPoint> ladder_points = ladder.points();
    all.insert(all.end(), ladder_points.begin(), ladder_points.end());
    std::vector<double> values(all.size());
    parallel_for(all.size(), [&](std::size_t i) { values[i] = local(all[i]); });
    rep.value = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        rep.per_anchor.push_back({all[i], values[i]});
        rep.value = std::max(rep.value, values[i]);
    }
    const std::size_t per = static_cast<std::size_t>(ladder.samples_per_ring);
    for (std::size_t j = 0; j < ladder.radii.size(); ++j) {
        double m = 0.0;
        for (std::size_t k = 0; k < per; ++k) m = std::max(m, values[anchors.size() + j * per + k]);
        rep.trend.push_back({ladder.radii[j], m});
    }
    return rep;
}

}  // namespace

double bekolle_local(const Weight& u, double p, DiscPoint a, int resolution) {
    check_p(p);
    return joint_average(u, p, Region::carleson_set(a), resolution);
}

double cp_local(const Weight& u, double p, double r, DiscPoint z, int resolution) {
    check_p(p);
    return joint_average(u, p, Region::pseudo_disk(z, r), resolution);
}

WeightConstantReport bekolle_constant(const Weight& u, double p, const std::vector<DiscPoint>& anchors,
                                      const BoundaryLadder& ladder, int resolution) {
    check_p(p);
    return assemble(p, anchors, ladder, [&](DiscPoint a) { return bekolle_local(u, p, a, resolution); });
}

WeightConstantReport cp_constant(const Weight& u, double p, double r, const std::vector<DiscPoint>& centers,
                                 const BoundaryLadder& ladder, int resolution) {
    check_p(p);
    if (!(r > 0.0 && r < 1.0)) throw DomainError("cp_constant: r must lie in (0,1)");
    return assemble(p, centers, ladder, [&](DiscPoint z) { return cp_local(u, p, r, z, resolution); });
}

}  // namespace bl
