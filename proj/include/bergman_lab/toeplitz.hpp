#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/measures.hpp"
#include "bergman_lab/report.hpp"
#include "bergman_lab/space.hpp"

namespace bl {

// M(m,n) = int e_n conj(e_m) dmu in the model basis. Radial model with radial
// measure is stored as its diagonal.
class ToeplitzMatrix {
public:
    ToeplitzMatrix(ModelPtr model, DiscMeasure mu, std::vector<double> diagonal);
    ToeplitzMatrix(ModelPtr model, DiscMeasure mu, Eigen::MatrixXcd entries);

    const KernelModel& model() const { return *model_; }
    ModelPtr model_ptr() const { return model_; }
    const DiscMeasure& measure() const { return mu_; }
    bool is_diagonal() const { return diagonal_form_; }
    int size() const { return size_; }
    const std::vector<double>& diagonal() const { return diag_; }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    cplx operator()(int m, int n) const;
    Eigen::MatrixXcd dense() const;
    // Leading (n+1)x(n+1) block, the matrix for the truncated model of degree n.
    ToeplitzMatrix leading(int n) const;

private:
    ModelPtr model_;
    DiscMeasure mu_;
    bool diagonal_form_;
    int size_;
    std::vector<double> diag_;
    Eigen::MatrixXcd entries_;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
};

// Throws DegeneracyError when the minimum eigenvalue is below -1e-8 ||M||.
ToeplitzMatrix assemble(const DiscMeasure& mu, ModelPtr m);
Spectrum spectrum(const ToeplitzMatrix& T);

// |sum_k lambda_k - int K_N(w,w) dmu(w)|
double trace_identity_check(const ToeplitzMatrix& T, const DiscMeasure& mu, const KernelModel& m);

// T_mu f(z) = int f(w) K_N(z,w) dmu(w) for monomial coefficients f.
cplx apply(const DiscMeasure& mu, const KernelModel& m, const std::vector<cplx>& f, DiscPoint z);
// Same through the matrix: sum_m (M beta)_m e_m(z), beta the basis coefficients of f.
cplx apply_matrix(const ToeplitzMatrix& T, const std::vector<cplx>& f, DiscPoint z);

CriterionReport essential_norm_estimate(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t,
                                        double r, const BoundaryLadder& ladder);

// Continuous increasing convex h: x^p, or piecewise linear through a table.
struct SchattenFunction {
    bool is_power = true;
    double p = 1.0;
    std::vector<double> x, y;

    static SchattenFunction power(double p);
    static SchattenFunction table(std::vector<double> x, std::vector<double> y);
    double operator()(double v) const;
    std::string describe() const;
};

enum class KernelProxy { diagonal, printed };

struct SchattenOptions {
    double r_max = 0.999;
    std::vector<double> sweep = {0.99, 0.995, 0.9975, 0.99875};
    KernelProxy proxy = KernelProxy::diagonal;
};

// int_{|z| <= R} h(C mu~(z)) Phi(z) u(z) dA(z), Phi = K_N(z,z) or u(Delta(z,r))/(1-|z|)^4.
CriterionReport schatten_integral(const DiscMeasure& mu, const KernelModel& m, const SchattenFunction& h, double C,
                                  double r, const SchattenOptions& opt = {});

// sum_k h(C lambda_k) with its trend over the leading blocks N/4, N/2, N.
CriterionReport schatten_membership(const ToeplitzMatrix& T, const SchattenFunction& h, double C);

}  // namespace bl
