#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/integration.hpp"
#include "bergman_lab/report.hpp"

namespace bl {

enum class WeightKind { constant, standard, power_one_minus_z, grid };

class Weight {
public:
    static Weight constant(double value = 1.0);
    static Weight standard(double alpha);
    static Weight power_one_minus_z(double gamma);
    // Samples on the uniform n x n grid over [-1,1]^2, row-major in (re, im).
    static Weight grid(int n, std::vector<double> samples, std::string source = {});

    WeightKind kind() const { return kind_; }
    double parameter() const { return param_; }
    double scale() const { return scale_; }
    int grid_size() const { return grid_n_; }
    const std::string& source() const { return source_; }
    bool radial() const { return kind_ == WeightKind::constant || kind_ == WeightKind::standard; }

    Weight scaled(double c) const;

    double operator()(DiscPoint z) const { return at(z, one_minus_abs2(z)); }
    // s = 1 - |z|^2, supplied by the caller when known more accurately.
    double at(DiscPoint z, double s) const;
    double radial_at(double r, double s) const;  // radial weights only

    std::string describe() const;

private:
    WeightKind kind_ = WeightKind::constant;
    double param_ = 0.0;
    double scale_ = 1.0;
    int grid_n_ = 0;
    std::vector<double> samples_;
    std::string source_;
};

// Exact moments int z^j conj(z)^l u dA, 0 <= j,l <= degree, where a closed form
// exists (power_one_minus_z: binomial series in z and conj(z)).
bool has_exact_moments(const Weight& u);
MomentMatrix exact_moments(const Weight& u, int degree);

double mass(const Weight& u, const Region& region, int resolution = 32);
double mass(const Weight& u, const DiscQuadrature& q);

struct AnchorValue {
    DiscPoint anchor;
    double value = 0.0;  // +inf when an average does not exist
};

struct WeightConstantReport {
    double p = 0.0;
    double value = 0.0;  // max over per_anchor
    std::vector<AnchorValue> per_anchor;
    std::vector<RingValue> trend;  // per-ring maxima on the ladder
};

// <u>_E (<u^{-p'/p}>_E)^{p-1} over E = S(a) (bekolle) or Delta(z,r) (cp).
double bekolle_local(const Weight& u, double p, DiscPoint a, int resolution = 48);
double cp_local(const Weight& u, double p, double r, DiscPoint z, int resolution = 32);

WeightConstantReport bekolle_constant(const Weight& u, double p, const std::vector<DiscPoint>& anchors,
                                      const BoundaryLadder& ladder, int resolution = 48);
WeightConstantReport cp_constant(const Weight& u, double p, double r, const std::vector<DiscPoint>& centers,
                                 const BoundaryLadder& ladder, int resolution = 32);

}  // namespace bl
