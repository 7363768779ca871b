#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/integration.hpp"
#include "bergman_lab/report.hpp"
#include "bergman_lab/weights.hpp"

namespace bl {

// Truncated orthonormal basis e_0..e_N of A^2(u) with e_m = sum_{j<=m} C(m,j) z^j.
class KernelModel {
public:
    KernelModel(Weight u, int degree, DiscQuadrature rule);

    const Weight& weight() const { return weight_; }
    int degree() const { return degree_; }
    bool radial() const { return radial_; }
    const DiscQuadrature& rule() const { return rule_; }
    double gram_residual() const { return gram_residual_; }

    // Radial case: ||z^n||^2; otherwise the Gram diagonal.
    const std::vector<double>& diagonal_norms() const { return diag_norm2_; }
    // Dense coefficients (non-radial only).
    const Eigen::MatrixXcd& coefficients() const { return C_; }
    const Eigen::MatrixXcd& cholesky_factor() const { return L_; }
    const Eigen::MatrixXcd& gram() const { return G_; }
    cplx coefficient(int m, int j) const;

    // e_0(z)..e_n(z), n = degree by default.
    std::vector<cplx> basis(DiscPoint z) const;
    // b(w) with K_n(z,w) = sum_j b_j(w) z^j (n = degree by default).
    std::vector<cplx> kernel_coeffs(DiscPoint w, int n = -1) const;
    cplx kernel(DiscPoint z, DiscPoint w) const;
    // K_n(z,z) with the first n+1 basis functions (n = degree by default).
    double diag(DiscPoint z, int n = -1) const;

    // Monomial coefficients of f in the basis: beta_m = <f, e_m>.
    std::vector<cplx> to_basis(const std::vector<cplx>& monomial) const;

private:
    Weight weight_;
    int degree_;
    bool radial_;
    DiscQuadrature rule_;
    double gram_residual_ = 0.0;
    std::vector<double> diag_norm2_;
    std::vector<double> inv_norm_;
    Eigen::MatrixXcd G_, L_, C_;
};

using ModelPtr = std::shared_ptr<const KernelModel>;

// Default truncation degree: 200 for the constant weight, 120 otherwise.
int default_degree(const Weight& u);

// Gram factorization with relative pivot threshold 1e-12; throws DegeneracyError.
ModelPtr build_kernel_model(const Weight& u, int degree);
ModelPtr build_kernel_model(const Weight& u, int degree, DiscQuadrature rule);

cplx kernel_eval(const KernelModel& m, DiscPoint z, DiscPoint w);

struct KernelNorm {
    double value = 0.0;
    double truncation_delta = 0.0;  // relative share of the integral beyond r_max
    bool flagged = false;
};

KernelNorm kernel_norm_report(const KernelModel& m, DiscPoint w, double p, double r_max = 0.995,
                              double flag_threshold = 0.05);
double kernel_norm(const KernelModel& m, DiscPoint w, double p);

class NormalizedKernel {
public:
    NormalizedKernel(ModelPtr base, DiscPoint at, double exponent);
    cplx operator()(DiscPoint z) const;
    DiscPoint at() const { return at_; }
    double exponent() const { return exponent_; }
    double norm_value() const { return norm_; }
    const KernelModel& base() const { return *base_; }

private:
    ModelPtr base_;
    DiscPoint at_;
    double exponent_;
    double norm_;
    std::vector<cplx> coeffs_;
};

NormalizedKernel normalized_kernel(ModelPtr m, DiscPoint w, double t);

// <f, g>_{A^2(u)} on the model rule for monomial coefficient vectors.
cplx inner_product(const KernelModel& m, const std::vector<cplx>& f, const std::vector<cplx>& g);

cplx eval_poly(const std::vector<cplx>& coeffs, DiscPoint z);

// |<f, K_w> - f(w)| with the inner product evaluated on the model rule.
double reproducing_check(const KernelModel& m, const std::vector<cplx>& f, DiscPoint w);
// Batched form: residual(i, k) for polynomial i and point k, row-major.
std::vector<double> reproducing_residuals(const KernelModel& m, const std::vector<std::vector<cplx>>& polys,
                                          const std::vector<DiscPoint>& points);

// A ring radius is resolved when |K_N - K_{N/2}| / K_N < tol there.
bool resolved(const KernelModel& m, DiscPoint z, double tol = 1e-3);

CriterionReport kernel_estimate_report(const KernelModel& m, double r, const Lattice& lattice,
                                       const std::vector<double>& p_values = {1.0, 2.0, 4.0});

}  // namespace bl
