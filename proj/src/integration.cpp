#include "bergman_lab/integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace bl {

namespace {

GaussRule compute_gauss(int n) {
    GaussRule g;
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        g.x[static_cast<std::size_t>(i)] = -z;
        g.x[static_cast<std::size_t>(n - 1 - i)] = z;
        g.w[static_cast<std::size_t>(i)] = w;
        g.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) g.x[static_cast<std::size_t>(m - 1)] = 0.0;
    return g;
}

// Node on [0,1] with its complement computed without cancellation.
struct UnitNode {
    double t, one_minus_t, w;
};

std::vector<UnitNode> unit_nodes(int n) {
    const GaussRule& g = gauss_legendre(n);
    std::vector<UnitNode> u(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = {0.5 * (1.0 + g.x[i]), 0.5 * (1.0 - g.x[i]), 0.5 * g.w[i]};
    return u;
}

void check_polar(const DiscQuadrature& q, const char* what) {
    if (!q.explicit_rings.empty() || q.angular_count <= 0 || q.region.kind == RegionKind::euclidean_disk)
        throw std::logic_error(std::string(what) + ": needs an origin-centred polar rule");
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(compute_gauss(n));
    return *slot;
}

Region Region::full_disc(double r_max) {
    Region r;
    r.kind = RegionKind::full_disc;
    r.r_max = r_max;
    return r;
}

Region Region::annulus(double r_min, double r_max) {
    Region r;
    r.kind = RegionKind::annulus;
    r.r_min = r_min;
    r.r_max = r_max;
    return r;
}

Region Region::euclidean_disk(DiscPoint center, double radius) {
    Region r;
    r.kind = RegionKind::euclidean_disk;
    r.center = center;
    r.radius = radius;
    return r;
}

Region Region::pseudo_disk(DiscPoint z, double rad) {
    const PseudoDisk D = bl::pseudo_disk(z, rad);
    return euclidean_disk(D.euclid_center, D.euclid_radius);
}

Region Region::carleson_set(DiscPoint anchor) {
    Region r;
    r.kind = RegionKind::carleson_set;
    r.anchor = anchor;
    return r;
}

Region Region::mobius_disc(DiscPoint anchor) {
    Region r;
    r.kind = RegionKind::mobius_disc;
    r.anchor = anchor;
    return r;
}

std::size_t DiscQuadrature::ring_count() const {
    return explicit_rings.empty() ? radial_nodes.size() : explicit_rings.size();
}

void DiscQuadrature::ring(std::size_t i, std::vector<QuadNode>& out) const {
    if (!explicit_rings.empty()) {
        out = explicit_rings[i];
        return;
    }
    const RadialNode& rn = radial_nodes[i];
    out.resize(static_cast<std::size_t>(angular_count));
    const double dtheta = 2.0 * kPi / angular_count;
    const double w = rn.weight * dtheta;
    const bool recentred = region.kind == RegionKind::euclidean_disk;
    for (int k = 0; k < angular_count; ++k) {
        QuadNode& node = out[static_cast<std::size_t>(k)];
        const DiscPoint offset = std::polar(rn.radius, dtheta * k);
        if (recentred) {
            node.z = region.center + offset;
            node.s = one_minus_abs2(node.z);
        } else {
            node.z = offset;
            node.s = rn.s;
        }
        node.w = w;
    }
}

std::vector<QuadNode> DiscQuadrature::nodes() const {
    std::vector<QuadNode> all, ring_nodes;
    for (std::size_t i = 0; i < ring_count(); ++i) {
        ring(i, ring_nodes);
        all.insert(all.end(), ring_nodes.begin(), ring_nodes.end());
    }
    return all;
}

std::size_t DiscQuadrature::size() const {
    if (explicit_rings.empty()) return radial_nodes.size() * static_cast<std::size_t>(angular_count);
    std::size_t n = 0;
    for (const auto& r : explicit_rings) n += r.size();
    return n;
}

double DiscQuadrature::weight_sum() const {
    return integrate_real(*this, [](const QuadNode&) { return 1.0; });
}

DiscQuadrature disc_rule(double r_max, int radial, int angular, double r_min) {
    if (!(r_max > r_min && r_min >= 0.0 && r_max <= 1.0)) throw DomainError("disc_rule: need 0 <= r_min < r_max <= 1");
    if (radial < 1 || angular < 1) throw DomainError("disc_rule: resolution must be positive");
    DiscQuadrature q;
    q.region = r_min > 0.0 ? Region::annulus(r_min, r_max) : Region::full_disc(r_max);
    q.angular_count = angular;
    const double h = r_max - r_min;
    for (const UnitNode& u : unit_nodes(radial)) {
        RadialNode rn;
        rn.radius = r_min + h * u.t;
        const double one_minus_r = (r_max == 1.0 && r_min == 0.0) ? u.one_minus_t : 1.0 - rn.radius;
        rn.s = one_minus_r * (1.0 + rn.radius);
        rn.weight = h * u.w * rn.radius;
        q.radial_nodes.push_back(rn);
    }
    return q;
}

DiscQuadrature model_rule(int degree, int extra_radial) {
    if (degree < 0) throw DomainError("model_rule: degree must be nonnegative");
    return disc_rule(1.0, degree + extra_radial, 2 * degree + 16);
}

DiscQuadrature euclidean_disk_rule(DiscPoint center, double radius, int radial, int angular) {
    if (!(radius > 0.0) || std::abs(center) + radius > 1.0 + 1e-15)
        throw DomainError("euclidean_disk_rule: disk must lie inside the unit disc");
    DiscQuadrature q;
    q.region = Region::euclidean_disk(center, radius);
    q.angular_count = angular;
    for (const UnitNode& u : unit_nodes(radial)) {
        RadialNode rn;
        rn.radius = radius * u.t;
        rn.weight = radius * u.w * rn.radius;
        rn.s = 0.0;
        q.radial_nodes.push_back(rn);
    }
    return q;
}

namespace {

// Pull-back by phi_a of a polar rule on {theta0 <= arg <= theta0 + span}
// (Gauss in angle) or on the whole disc (trapezoid in angle, span = 2 pi).
DiscQuadrature pulled_back(DiscPoint a, int radial, int angular, bool half) {
    DiscQuadrature q;
    q.region = half ? Region::carleson_set(a) : Region::mobius_disc(a);
    const double sa = one_minus_abs2(a);
    std::vector<double> theta, wtheta;
    if (half) {
        const double theta0 = std::arg(a) + 0.5 * kPi;
        for (const UnitNode& u : unit_nodes(angular)) {
            theta.push_back(theta0 + kPi * u.t);
            wtheta.push_back(kPi * u.w);
        }
    } else {
        for (int k = 0; k < angular; ++k) {
            theta.push_back(2.0 * kPi * k / angular);
            wtheta.push_back(2.0 * kPi / angular);
        }
    }
    for (const UnitNode& u : unit_nodes(radial)) {
        const double gap = u.one_minus_t * u.one_minus_t;  // 1 - rho
        const double rho = 1.0 - gap;
        const double drho = 2.0 * u.one_minus_t * u.w;
        const double s_zeta = gap * (1.0 + rho);
        std::vector<QuadNode> ring;
        ring.reserve(theta.size());
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const DiscPoint zeta = std::polar(rho, theta[k]);
            const double d2 = std::norm(1.0 - std::conj(a) * zeta);
            QuadNode node;
            node.z = mobius(a, zeta);
            node.s = sa * s_zeta / d2;
            node.w = drho * rho * wtheta[k] * sa * sa / (d2 * d2);
            ring.push_back(node);
        }
        q.explicit_rings.push_back(std::move(ring));
    }
    return q;
}

}  // namespace

DiscQuadrature carleson_rule(DiscPoint anchor, int radial, int angular) {
    require_in_disc(anchor, "carleson_rule");
    if (anchor == DiscPoint(0.0, 0.0)) {
        DiscQuadrature q = pulled_back(anchor, radial, angular, false);
        q.region = Region::carleson_set(anchor);
        return q;
    }
    return pulled_back(anchor, radial, angular, true);
}

DiscQuadrature mobius_disc_rule(DiscPoint anchor, int radial, int angular) {
    require_in_disc(anchor, "mobius_disc_rule");
    return pulled_back(anchor, radial, angular, false);
}

std::vector<RadialNode> radial_panel_rule(double R, int per_panel) {
    if (!(R > 0.0 && R < 1.0)) throw DomainError("radial_panel_rule: R must lie in (0,1)");
    std::vector<RadialNode> out;
    const GaussRule& g = gauss_legendre(per_panel);
    double a_gap = 1.0, b_gap = 0.5;
    const double R_gap = 1.0 - R;
    while (a_gap > R_gap) {
        const double lo_gap = std::max(b_gap, R_gap);
        const double half = 0.5 * (a_gap - lo_gap);
        for (int i = 0; i < per_panel; ++i) {
            const double gap = lo_gap + half * (1.0 - g.x[static_cast<std::size_t>(i)]);
            RadialNode n;
            n.radius = 1.0 - gap;
            n.weight = half * g.w[static_cast<std::size_t>(i)] * n.radius;
            n.s = gap * (1.0 + n.radius);
            out.push_back(n);
        }
        a_gap = b_gap;
        b_gap *= 0.5;
    }
    return out;
}

namespace {

template <class T, class F>
T integrate_impl(const DiscQuadrature& q, const F& f) {
    const std::size_t rings = q.ring_count();
    std::vector<T> ring_sums(rings);
    parallel_for(rings, [&](std::size_t i) {
        std::vector<QuadNode> nodes;
        q.ring(i, nodes);
        std::vector<T> terms(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const T v = f(nodes[k]);
            if (!std::isfinite(std::abs(v)))
                throw EvaluationError("integrand is not finite at node " + format_point(nodes[k].z));
            terms[k] = v * nodes[k].w;
        }
        ring_sums[i] = pairwise_sum(terms);
    });
    return pairwise_sum(ring_sums);
}

}  // namespace

cplx integrate(const DiscQuadrature& q, const ComplexIntegrand& f) { return integrate_impl<cplx>(q, f); }

double integrate_real(const DiscQuadrature& q, const RealIntegrand& f) { return integrate_impl<double>(q, f); }

namespace {

// Full disc with radial nodes rho = 1 - (1-x)^2, so that (1-|z|^2)^a is smooth in x.
DiscQuadrature graded_disc_rule(int radial, int angular) {
    DiscQuadrature q;
    q.region = Region::full_disc(1.0);
    q.angular_count = angular;
    for (const UnitNode& u : unit_nodes(radial)) {
        const double c = u.one_minus_t * u.one_minus_t;
        RadialNode rn;
        rn.radius = 1.0 - c;
        rn.s = c * (2.0 - c);
        rn.weight = 2.0 * u.one_minus_t * u.w * rn.radius;
        q.radial_nodes.push_back(rn);
    }
    return q;
}

DiscQuadrature rule_at(const Region& region, int n) {
    switch (region.kind) {
        case RegionKind::full_disc:
            return region.r_max == 1.0 ? graded_disc_rule(n, 2 * n) : disc_rule(region.r_max, n, 2 * n);
        case RegionKind::annulus: return disc_rule(region.r_max, n, 2 * n, region.r_min);
        case RegionKind::euclidean_disk: return euclidean_disk_rule(region.center, region.radius, n, 2 * n);
        case RegionKind::carleson_set: return carleson_rule(region.anchor, n, n);
        case RegionKind::mobius_disc: return mobius_disc_rule(region.anchor, n, 2 * n);
    }
    throw std::logic_error("unknown region kind");
}

}  // namespace

DiscQuadrature accepted_rule(const Region& region, int resolution, int max_doublings) {
    if (resolution < 4) throw DomainError("region_quadrature: resolution must be at least 4");
    int n = resolution;
    DiscQuadrature q = rule_at(region, n);
    double area = q.weight_sum();
    for (int k = 0; k <= max_doublings; ++k) {
        DiscQuadrature finer = rule_at(region, 2 * n);
        const double finer_area = finer.weight_sum();
        if (std::abs(finer_area - area) < 1e-6) return q;
        q = std::move(finer);
        area = finer_area;
        n *= 2;
    }
    throw PrecisionError("region_quadrature: area did not stabilise under refinement");
}

DiscQuadrature region_quadrature(const Region& region, int resolution) { return accepted_rule(region, resolution); }

ConvergedIntegral converged_integral(const Region& region, int resolution, const RealIntegrand& f) {
    ConvergedIntegral out;
    for (int k = 0; k < 3; ++k) out.sequence.push_back(integrate_real(rule_at(region, resolution << k), f));
    const double d1 = out.sequence[1] - out.sequence[0];
    const double d2 = out.sequence[2] - out.sequence[1];
    const double scale = std::abs(out.sequence[2]);
    if (std::abs(d2) > 0.75 * std::abs(d1) && std::abs(d2) > 1e-6 * scale) {
        out.divergent = true;
        out.value = std::numeric_limits<double>::infinity();
    } else {
        out.value = out.sequence[2];
    }
    return out;
}

MomentMatrix polar_moments(const DiscQuadrature& q, int degree, const RealIntegrand& f) {
    check_polar(q, "polar_moments");
    const int N = degree;
    const std::size_t dim = static_cast<std::size_t>(N + 1);
    const std::size_t rings = q.radial_nodes.size();
    // U[i][d] = sum_k (2 pi / n) f(node_ik) e^{i d theta_k}, d = 0..N
    std::vector<std::vector<cplx>> U(rings, std::vector<cplx>(dim));
    parallel_for(rings, [&](std::size_t i) {
        std::vector<QuadNode> nodes;
        q.ring(i, nodes);
        const double dtheta = 2.0 * kPi / q.angular_count;
        std::vector<cplx>& u = U[i];
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double fk = f(nodes[k]);
            if (!std::isfinite(fk)) throw EvaluationError("moment density is not finite at node " + format_point(nodes[k].z));
            const cplx step = std::polar(1.0, dtheta * static_cast<double>(k));
            cplx e = 1.0;
            for (std::size_t d = 0; d < dim; ++d) {
                u[d] += fk * e;
                e *= step;
            }
        }
        for (auto& v : u) v *= dtheta;
    });
    MomentMatrix M;
    M.n = N;
    M.a.assign(dim * dim, cplx(0.0));
    parallel_for(dim, [&](std::size_t j) {
        for (std::size_t i = 0; i < rings; ++i) {
            const RadialNode& rn = q.radial_nodes[i];
            double pj = std::pow(rn.radius, static_cast<double>(j));
            double pl = 1.0;
            for (std::size_t l = 0; l < dim; ++l) {
                const cplx uu = (j >= l) ? U[i][j - l] : std::conj(U[i][l - j]);
                M.a[j * dim + l] += rn.weight * pj * pl * uu;
                pl *= rn.radius;
            }
        }
    });
    return M;
}

std::vector<double> radial_moments(const DiscQuadrature& q, int degree, const std::function<double(double, double)>& f) {
    check_polar(q, "radial_moments");
    const std::size_t dim = static_cast<std::size_t>(degree + 1);
    std::vector<double> G(dim, 0.0);
    for (const RadialNode& rn : q.radial_nodes) {
        const double v = f(rn.radius, rn.s);
        if (!std::isfinite(v)) throw EvaluationError("radial density is not finite at radius " + std::to_string(rn.radius));
        const double c = 2.0 * kPi * rn.weight * v;
        const double r2 = rn.radius * rn.radius;
        double p = 1.0;
        for (std::size_t n = 0; n < dim; ++n) {
            G[n] += c * p;
            p *= r2;
            if (p == 0.0) break;
        }
    }
    return G;
}

}  // namespace bl
