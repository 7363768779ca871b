#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/measures.hpp"
#include "bergman_lab/report.hpp"
#include "bergman_lab/space.hpp"

namespace bl {

enum class TransformKind { berezin, t_berezin, average };

const char* transform_name(TransformKind k);

struct TransformProfile {
    std::vector<DiscPoint> grid;
    std::vector<double> values;
    TransformKind kind = TransformKind::berezin;
    std::map<std::string, double> parameters;
};

// int |k_z|^2 dmu with k_z the A^2(u)-normalized kernel.
double berezin(const DiscMeasure& mu, const KernelModel& m, DiscPoint z);
// int |K(w,z)|^t dmu(w) / ||K_z||^t_{A^t(u)}
double t_berezin(const DiscMeasure& mu, const KernelModel& m, double t, DiscPoint z);
// mu(Delta(z,r)) / u(Delta(z,r))
double average_function(const DiscMeasure& mu, const Weight& u, double r, DiscPoint z);

// Evaluates a transform at many points. Atomic measures use exact sums;
// for t = 2 a radial model with radial measure uses the diagonal eigenvalues
// lambda_n = H_nn / G_nn and other densities the assembled matrix
// (conj(e(z))^H M conj(e(z)) / K(z,z)); t != 2 uses the model quadrature.
// Quadrature values for radial setups are cached by |z|.
class BerezinEvaluator {
public:
    BerezinEvaluator(const DiscMeasure& mu, const KernelModel& m, double t = 2.0);

    double operator()(DiscPoint z) const;
    std::vector<double> evaluate(const std::vector<DiscPoint>& points) const;
    const char* route() const;

private:
    enum class Route { atomic, diagonal, matrix, quadrature };
    double compute(DiscPoint z) const;

    DiscMeasure mu_;
    const KernelModel& m_;
    double t_;
    Route route_;
    std::vector<double> lambda_;
    std::vector<Atom> atoms_;
    Eigen::MatrixXcd M_;
};

TransformProfile berezin_profile(const DiscMeasure& mu, const KernelModel& m, const std::vector<DiscPoint>& grid);
TransformProfile t_berezin_profile(const DiscMeasure& mu, const KernelModel& m, double t,
                                   const std::vector<DiscPoint>& grid);
TransformProfile average_profile(const DiscMeasure& mu, const Weight& u, double r, const std::vector<DiscPoint>& grid);

// Lower band min mu_t~/mu_r^, upper check max mu_t~ against sup mu_r^, and
// discrete L^p norms of both profiles over the grid.
CriterionReport comparability_report(const DiscMeasure& mu, const KernelModel& m, double t, double r,
                                     const Lattice& grid, const std::vector<double>& lp_exponents = {1.0, 2.0});

}  // namespace bl
