#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/integration.hpp"
#include "bergman_lab/weights.hpp"

namespace bl {

class KernelModel;

struct Atom {
    DiscPoint at;
    double mass = 0.0;
};

enum class MeasureKind { atomic, weighted_area, power_density, density_grid, sum };

class DiscMeasure {
public:
    static DiscMeasure atomic(std::vector<Atom> atoms);
    static DiscMeasure weighted_area(Weight u);
    static DiscMeasure power_density(double t);
    // Density samples on the uniform n x n grid over [-1,1]^2 (bilinear).
    static DiscMeasure density_grid(int n, std::vector<double> samples, std::string source = {});
    static DiscMeasure sum(std::vector<DiscMeasure> parts);

    MeasureKind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const Weight& weight() const { return weight_; }
    double exponent() const { return t_; }
    double scale() const { return scale_; }
    const std::vector<DiscMeasure>& parts() const { return parts_; }
    const Weight& grid_density() const { return weight_; }

    DiscMeasure scaled(double c) const;

    // Rotation invariant (radial density, or no mass off the origin).
    bool radial() const;
    bool has_density() const;

    // Density g at a point (0 for purely atomic measures).
    double density(DiscPoint z, double s) const;
    double radial_density(double r, double s) const;

    std::string describe() const;

private:
    MeasureKind kind_ = MeasureKind::atomic;
    std::vector<Atom> atoms_;
    Weight weight_;
    double t_ = 0.0;
    double scale_ = 1.0;
    std::vector<DiscMeasure> parts_;
};

// Atoms of a measure after expanding sums and scales.
std::vector<Atom> all_atoms(const DiscMeasure& mu);

// int f dmu: atoms exactly, densities with the rule q.
cplx integrate_measure(const DiscMeasure& mu, const std::function<cplx(DiscPoint z, double s)>& f,
                       const DiscQuadrature& q);
double integrate_measure_real(const DiscMeasure& mu, const std::function<double(DiscPoint z, double s)>& f,
                              const DiscQuadrature& q);
double integrate_measure_real(const DiscMeasure& mu, const std::function<double(DiscPoint z, double s)>& f,
                              int resolution = 64);

// int f conj(g) dmu for polynomials given by monomial coefficients; weighted-area
// parts with exact moments are paired through those moments, the rest uses q.
cplx integrate_polynomial_product(const DiscMeasure& mu, const std::vector<cplx>& f, const std::vector<cplx>& g,
                                  const DiscQuadrature& q);

double total_mass(const DiscMeasure& mu, int resolution = 64);

// mu(Delta(z,r)); atoms by strict membership d(z,atom) < r.
double disk_mass(const DiscMeasure& mu, DiscPoint z, double r, int resolution = 24);

// mu(S(a)); atoms by carleson_contains.
double carleson_mass(const DiscMeasure& mu, DiscPoint a, int resolution = 48);

// Moments H_jl = int z^j conj(z)^l dmu on the polar rule q, (N+1)x(N+1).
MomentMatrix measure_moments(const DiscMeasure& mu, const DiscQuadrature& q, int degree);
// Diagonal moments for radial measures.
std::vector<double> measure_radial_moments(const DiscMeasure& mu, const DiscQuadrature& q, int degree);

struct KernelSquareCheck {
    bool finite = false;
    std::vector<DiscPoint> probes;
    std::vector<double> values;       // int |K_N(xi,z)|^2 dmu(xi)
    std::vector<double> half_values;  // same with K_{N/2}
    double max_growth = 0.0;          // max relative change from N/2 to N
};

// Finite at every probe, with the N/2 -> N growth of the integrals as the proxy
// for square integrability of the untruncated kernel.
KernelSquareCheck kernel_square_integrability_check(const DiscMeasure& mu, const KernelModel& m,
                                                    const std::vector<DiscPoint>& probes);

}  // namespace bl
