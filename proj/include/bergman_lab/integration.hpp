#pragma once

#include <functional>
#include <vector>

#include "bergman_lab/common.hpp"
#include "bergman_lab/geometry.hpp"

namespace bl {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1], ascending
    std::vector<double> w;
};

// Cached Gauss-Legendre rule with n nodes.
const GaussRule& gauss_legendre(int n);

struct QuadNode {
    DiscPoint z;
    double w = 0.0;
    double s = 0.0;  // 1 - |z|^2, carried separately to avoid cancellation near the circle
};

struct RadialNode {
    double radius = 0.0;
    double weight = 0.0;  // weight for the measure r dr (already includes the factor r)
    double s = 0.0;       // 1 - radius^2
};

enum class RegionKind { full_disc, euclidean_disk, carleson_set, mobius_disc, annulus };

struct Region {
    RegionKind kind = RegionKind::full_disc;
    double r_max = 1.0;      // full_disc, annulus outer radius
    double r_min = 0.0;      // annulus inner radius
    DiscPoint center;        // euclidean_disk
    double radius = 0.0;     // euclidean_disk
    DiscPoint anchor;        // carleson_set, mobius_disc

    static Region full_disc(double r_max = 1.0);
    static Region annulus(double r_min, double r_max);
    static Region euclidean_disk(DiscPoint center, double radius);
    static Region pseudo_disk(DiscPoint z, double r);
    static Region carleson_set(DiscPoint anchor);
    static Region mobius_disc(DiscPoint anchor);
};

// A product rule. Polar regions store radial nodes and an angular count and
// generate nodes ring by ring; pulled-back regions store explicit rings.
class DiscQuadrature {
public:
    Region region;
    std::vector<RadialNode> radial_nodes;
    int angular_count = 0;

    std::size_t ring_count() const;
    void ring(std::size_t i, std::vector<QuadNode>& out) const;
    std::vector<QuadNode> nodes() const;
    std::size_t size() const;
    double weight_sum() const;

    // Explicit rings (used for Mobius pull-backs).
    std::vector<std::vector<QuadNode>> explicit_rings;
};

// Polar rule on an annulus r_min <= |z| <= r_max (r_min = 0: disc).
DiscQuadrature disc_rule(double r_max, int radial, int angular, double r_min = 0.0);

// Model rule for polynomial degree n in z and conj(z): exact for weights that
// are polynomial in |z|^2.
DiscQuadrature model_rule(int degree, int extra_radial = 16);

// Polar rule recentred on a Euclidean disk inside the unit disc.
DiscQuadrature euclidean_disk_rule(DiscPoint center, double radius, int radial, int angular);

// Pull-back of a polar rule on the half disc {Re(conj(a) z) <= 0} (a != 0) or
// the whole disc (mobius_disc) by phi_a. Radial nodes are graded toward the
// unit circle by rho = 1 - (1-x)^2.
DiscQuadrature carleson_rule(DiscPoint anchor, int radial, int angular);
DiscQuadrature mobius_disc_rule(DiscPoint anchor, int radial, int angular);

// Radial nodes on [0, R]: Gauss panels [0, 1/2], [1 - 2^-k, 1 - 2^-(k+1)], ...,
// the last one cut at R. Weights are for r dr.
std::vector<RadialNode> radial_panel_rule(double R, int per_panel = 16);

using ComplexIntegrand = std::function<cplx(const QuadNode&)>;
using RealIntegrand = std::function<double(const QuadNode&)>;

cplx integrate(const DiscQuadrature& q, const ComplexIntegrand& f);
double integrate_real(const DiscQuadrature& q, const RealIntegrand& f);

// Rule for a region at the given resolution; the resolution is doubled until
// the area changes by less than 1e-6.
DiscQuadrature region_quadrature(const Region& region, int resolution);

// Same acceptance loop with a custom starting point; returns the accepted rule.
DiscQuadrature accepted_rule(const Region& region, int resolution, int max_doublings = 6);

// Integral over the region evaluated at resolutions n, 2n, 4n. Non-shrinking,
// relatively significant increments are reported as +infinity.
struct ConvergedIntegral {
    double value = 0.0;
    std::vector<double> sequence;
    bool divergent = false;
};

ConvergedIntegral converged_integral(const Region& region, int resolution, const RealIntegrand& f);

// Gram-type moments sum_nodes w * z^j conj(z)^l f over a polar rule,
// (N+1)x(N+1), assembled from per-ring angular Fourier sums.
struct MomentMatrix {
    int n = 0;
    std::vector<cplx> a;  // row-major (j, l)
    cplx operator()(int j, int l) const { return a[static_cast<std::size_t>(j) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(l)]; }
};

MomentMatrix polar_moments(const DiscQuadrature& q, int degree, const RealIntegrand& f);

// Diagonal moments 2 pi sum_i w_i r_i^{2n} f(r_i) for radial f.
std::vector<double> radial_moments(const DiscQuadrature& q, int degree, const std::function<double(double r, double s)>& f);

}  // namespace bl
