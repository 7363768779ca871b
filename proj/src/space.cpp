#include "bergman_lab/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bl {

KernelModel::KernelModel(Weight u, int degree, DiscQuadrature rule)
    : weight_(std::move(u)), degree_(degree), radial_(weight_.radial()), rule_(std::move(rule)) {
    if (degree_ < 1) throw DomainError("build_kernel_model: degree must be at least 1");
    const std::size_t dim = static_cast<std::size_t>(degree_ + 1);
    if (radial_) {
        diag_norm2_ = radial_moments(rule_, degree_, [&](double r, double s) { return weight_.radial_at(r, s); });
        const double top = *std::max_element(diag_norm2_.begin(), diag_norm2_.end());
        inv_norm_.resize(dim);
        for (std::size_t n = 0; n < dim; ++n) {
            if (!(diag_norm2_[n] > 1e-12 * top) || !std::isfinite(diag_norm2_[n]))
                throw DegeneracyError("Gram matrix is numerically singular at degree " + std::to_string(n) +
                                      "; lower the degree or raise the quadrature resolution");
            inv_norm_[n] = 1.0 / std::sqrt(diag_norm2_[n]);
            gram_residual_ = std::max(gram_residual_, std::abs(diag_norm2_[n] * inv_norm_[n] * inv_norm_[n] - 1.0));
        }
        return;
    }
    if (dim > 2001) throw DegeneracyError("dense Gram factorization is limited to degree 2000");
    const MomentMatrix M = has_exact_moments(weight_)
                               ? exact_moments(weight_, degree_)
                               : polar_moments(rule_, degree_, [&](const QuadNode& n) { return weight_.at(n.z, n.s); });
    G_.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t l = 0; l < dim; ++l) G_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = M(static_cast<int>(j), static_cast<int>(l));
    G_ = 0.5 * (G_ + G_.adjoint()).eval();
    Eigen::LLT<Eigen::MatrixXcd> llt(G_);
    if (llt.info() != Eigen::Success)
        throw DegeneracyError("Gram matrix is not positive definite; lower the degree or raise the quadrature resolution");
    L_ = llt.matrixL();
    for (std::size_t m = 0; m < dim; ++m) {
        const auto i = static_cast<Eigen::Index>(m);
        const double pivot = std::norm(L_(i, i));
        if (!(pivot > 1e-12 * G_(i, i).real()))
            throw DegeneracyError("Gram pivot below 1e-12 relative at degree " + std::to_string(m) +
                                  "; lower the degree or raise the quadrature resolution");
    }
    C_ = L_.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(G_.rows(), G_.cols()));
    diag_norm2_.resize(dim);
    for (std::size_t m = 0; m < dim; ++m) diag_norm2_[m] = G_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
    const Eigen::MatrixXcd R = C_ * G_ * C_.adjoint() - Eigen::MatrixXcd::Identity(G_.rows(), G_.cols());
    gram_residual_ = R.cwiseAbs().maxCoeff();
}

cplx KernelModel::coefficient(int m, int j) const {
    if (j > m) return 0.0;
    if (radial_) return m == j ? cplx(inv_norm_[static_cast<std::size_t>(m)]) : cplx(0.0);
    return C_(m, j);
}

std::vector<cplx> KernelModel::basis(DiscPoint z) const {
    const std::size_t dim = static_cast<std::size_t>(degree_ + 1);
    std::vector<cplx> p(dim);
    cplx zp = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
        p[j] = zp;
        zp *= z;
    }
    if (radial_) {
        for (std::size_t j = 0; j < dim; ++j) p[j] *= inv_norm_[j];
        return p;
    }
    std::vector<cplx> e(dim, cplx(0.0));
    for (std::size_t m = 0; m < dim; ++m) {
        cplx s = 0.0;
        for (std::size_t j = 0; j <= m; ++j) s += C_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) * p[j];
        e[m] = s;
    }
    return e;
}

std::vector<cplx> KernelModel::kernel_coeffs(DiscPoint w, int n) const {
    const std::size_t dim = static_cast<std::size_t>((n < 0 || n > degree_) ? degree_ + 1 : n + 1);
    std::vector<cplx> b(dim);
    if (radial_) {
        const cplx wc = std::conj(w);
        cplx p = 1.0;
        for (std::size_t j = 0; j < dim; ++j) {
            b[j] = p * (inv_norm_[j] * inv_norm_[j]);
            p *= wc;
        }
        return b;
    }
    const std::vector<cplx> e = basis(w);
    for (std::size_t j = 0; j < dim; ++j) {
        cplx s = 0.0;
        for (std::size_t m = j; m < dim; ++m) s += C_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) * std::conj(e[m]);
        b[j] = s;
    }
    return b;
}

cplx KernelModel::kernel(DiscPoint z, DiscPoint w) const { return eval_poly(kernel_coeffs(w), z); }

double KernelModel::diag(DiscPoint z, int n) const {
    const int top = (n < 0 || n > degree_) ? degree_ : n;
    if (radial_) {
        const double x = std::norm(z);
        double p = 1.0, s = 0.0;
        for (int k = 0; k <= top; ++k) {
            s += p * inv_norm_[static_cast<std::size_t>(k)] * inv_norm_[static_cast<std::size_t>(k)];
            p *= x;
        }
        return s;
    }
    const std::vector<cplx> e = basis(z);
    double s = 0.0;
    for (int k = 0; k <= top; ++k) s += std::norm(e[static_cast<std::size_t>(k)]);
    return s;
}

std::vector<cplx> KernelModel::to_basis(const std::vector<cplx>& f) const {
    const std::size_t dim = static_cast<std::size_t>(degree_ + 1);
    if (f.size() > dim) throw DomainError("to_basis: polynomial degree exceeds the model degree");
    std::vector<cplx> beta(dim, cplx(0.0));
    if (radial_) {
        for (std::size_t j = 0; j < f.size(); ++j) beta[j] = f[j] * std::sqrt(diag_norm2_[j]);
        return beta;
    }
    for (std::size_t m = 0; m < dim; ++m) {
        cplx s = 0.0;
        for (std::size_t j = m; j < f.size(); ++j) s += f[j] * L_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m));
        beta[m] = s;
    }
    return beta;
}

int default_degree(const Weight& u) { return u.kind() == WeightKind::constant ? 200 : 120; }

ModelPtr build_kernel_model(const Weight& u, int degree) {
    return std::make_shared<const KernelModel>(u, degree, model_rule(degree));
}

ModelPtr build_kernel_model(const Weight& u, int degree, DiscQuadrature rule) {
    return std::make_shared<const KernelModel>(u, degree, std::move(rule));
}

cplx kernel_eval(const KernelModel& m, DiscPoint z, DiscPoint w) { return m.kernel(z, w); }

cplx eval_poly(const std::vector<cplx>& c, DiscPoint z) {
    cplx s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
    return s;
}

namespace {

// int |K(z,w)|^p u dA for several p, split at |z| <= r_max.
struct NormSums {
    std::vector<double> inner, outer;
};

NormSums kernel_power_sums(const KernelModel& m, DiscPoint w, const std::vector<double>& ps, double r_max) {
    const std::vector<cplx> b = m.kernel_coeffs(w);
    const DiscQuadrature& q = m.rule();
    const std::size_t rings = q.ring_count();
    const std::size_t np = ps.size();
    std::vector<double> ring_sums(rings * np, 0.0);
    parallel_for(rings, [&](std::size_t i) {
        std::vector<QuadNode> nodes;
        q.ring(i, nodes);
        std::vector<std::vector<double>> terms(np, std::vector<double>(nodes.size()));
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double a = std::abs(eval_poly(b, nodes[k].z));
            const double uw = m.weight().at(nodes[k].z, nodes[k].s) * nodes[k].w;
            for (std::size_t j = 0; j < np; ++j) terms[j][k] = (ps[j] == 2.0 ? a * a : std::pow(a, ps[j])) * uw;
        }
        for (std::size_t j = 0; j < np; ++j) ring_sums[i * np + j] = pairwise_sum(terms[j]);
    });
    NormSums out;
    out.inner.assign(np, 0.0);
    out.outer.assign(np, 0.0);
    for (std::size_t j = 0; j < np; ++j) {
        std::vector<double> in, outv;
        for (std::size_t i = 0; i < rings; ++i) {
            const bool inside = q.explicit_rings.empty() ? q.radial_nodes[i].radius <= r_max : true;
            (inside ? in : outv).push_back(ring_sums[i * np + j]);
        }
        out.inner[j] = pairwise_sum(in);
        out.outer[j] = pairwise_sum(outv);
    }
    return out;
}

std::vector<KernelNorm> kernel_norms(const KernelModel& m, DiscPoint w, const std::vector<double>& ps, double r_max,
                                     double flag_threshold) {
    for (double p : ps)
        if (!(p > 0.0)) throw DomainError("kernel_norm: p must be positive");
    const NormSums s = kernel_power_sums(m, w, ps, r_max);
    std::vector<KernelNorm> out(ps.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const double total = s.inner[j] + s.outer[j];
        out[j].value = std::pow(total, 1.0 / ps[j]);
        out[j].truncation_delta = total > 0.0 ? s.outer[j] / total : 0.0;
        out[j].flagged = out[j].truncation_delta > flag_threshold;
    }
    return out;
}

}  // namespace

KernelNorm kernel_norm_report(const KernelModel& m, DiscPoint w, double p, double r_max, double flag_threshold) {
    require_in_disc(w, "kernel_norm");
    return kernel_norms(m, w, {p}, r_max, flag_threshold)[0];
}

double kernel_norm(const KernelModel& m, DiscPoint w, double p) { return kernel_norm_report(m, w, p).value; }

NormalizedKernel::NormalizedKernel(ModelPtr base, DiscPoint at, double exponent)
    : base_(std::move(base)), at_(at), exponent_(exponent) {
    if (!(exponent_ > 0.0)) throw DomainError("normalized_kernel: t must be positive");
    norm_ = kernel_norm(*base_, at_, exponent_);
    coeffs_ = base_->kernel_coeffs(at_);
    for (auto& c : coeffs_) c /= norm_;
}

cplx NormalizedKernel::operator()(DiscPoint z) const { return eval_poly(coeffs_, z); }

NormalizedKernel normalized_kernel(ModelPtr m, DiscPoint w, double t) { return NormalizedKernel(std::move(m), w, t); }

cplx inner_product(const KernelModel& m, const std::vector<cplx>& f, const std::vector<cplx>& g) {
    if (!m.radial()) {
        if (f.size() > static_cast<std::size_t>(m.degree() + 1) || g.size() > static_cast<std::size_t>(m.degree() + 1))
            throw DomainError("inner_product: polynomial degree exceeds the model degree");
        const Eigen::MatrixXcd& G = m.gram();
        std::vector<cplx> row(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            std::vector<cplx> t(g.size());
            for (std::size_t l = 0; l < g.size(); ++l)
                t[l] = G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) * std::conj(g[l]);
            row[j] = f[j] * pairwise_sum(t);
        }
        return pairwise_sum(row);
    }
    return integrate(m.rule(), [&](const QuadNode& n) {
        return eval_poly(f, n.z) * std::conj(eval_poly(g, n.z)) * m.weight().at(n.z, n.s);
    });
}

std::vector<double> reproducing_residuals(const KernelModel& m, const std::vector<std::vector<cplx>>& polys,
                                          const std::vector<DiscPoint>& points) {
    for (const auto& f : polys)
        if (f.size() > static_cast<std::size_t>(m.degree() + 1))
            throw DomainError("reproducing_check: polynomial degree exceeds the model degree");
    const std::size_t P = polys.size(), W = points.size();
    std::vector<std::vector<cplx>> b(W);
    for (std::size_t k = 0; k < W; ++k) b[k] = m.kernel_coeffs(points[k]);
    if (!m.radial()) {
        std::vector<double> out(P * W);
        parallel_for(P * W, [&](std::size_t i) {
            const std::size_t a = i / W, k = i % W;
            out[i] = std::abs(inner_product(m, polys[a], b[k]) - eval_poly(polys[a], points[k]));
        });
        return out;
    }
    const DiscQuadrature& q = m.rule();
    const std::size_t rings = q.ring_count();
    std::vector<cplx> partial(rings * P * W);
    parallel_for(rings, [&](std::size_t i) {
        std::vector<QuadNode> nodes;
        q.ring(i, nodes);
        std::vector<cplx> fv(P), kv(W);
        std::vector<cplx> acc(P * W, cplx(0.0));
        for (const QuadNode& n : nodes) {
            const double uw = m.weight().at(n.z, n.s) * n.w;
            for (std::size_t a = 0; a < P; ++a) fv[a] = eval_poly(polys[a], n.z) * uw;
            for (std::size_t k = 0; k < W; ++k) kv[k] = std::conj(eval_poly(b[k], n.z));
            for (std::size_t a = 0; a < P; ++a)
                for (std::size_t k = 0; k < W; ++k) acc[a * W + k] += fv[a] * kv[k];
        }
        std::copy(acc.begin(), acc.end(), partial.begin() + static_cast<std::ptrdiff_t>(i * P * W));
    });
    std::vector<double> out(P * W);
    std::vector<cplx> column(rings);
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t k = 0; k < W; ++k) {
            for (std::size_t i = 0; i < rings; ++i) column[i] = partial[i * P * W + a * W + k];
            out[a * W + k] = std::abs(pairwise_sum(column) - eval_poly(polys[a], points[k]));
        }
    return out;
}

double reproducing_check(const KernelModel& m, const std::vector<cplx>& f, DiscPoint w) {
    return reproducing_residuals(m, {f}, {w})[0];
}

bool resolved(const KernelModel& m, DiscPoint z, double tol) {
    const double full = m.diag(z);
    const double half = m.diag(z, m.degree() / 2);
    return std::abs(full - half) <= tol * full;
}

CriterionReport kernel_estimate_report(const KernelModel& m, double r, const Lattice& lattice,
                                       const std::vector<double>& p_values) {
    CriterionReport rep;
    rep.name = "kernel_estimates";
    rep.parameters["r"] = r;
    rep.parameters["degree"] = m.degree();
    std::vector<DiscPoint> pts;
    for (DiscPoint a : lattice.points)
        if (resolved(m, a)) pts.push_back(a);
    rep.values["points_used"] = static_cast<double>(pts.size());
    rep.values["points_unresolved"] = static_cast<double>(lattice.points.size() - pts.size());

    const std::size_t n = pts.size();
    std::vector<double> udelta(n), kdiag(n);
    parallel_for(n, [&](std::size_t i) {
        udelta[i] = mass(m.weight(), Region::pseudo_disk(pts[i], r), 24);
        kdiag[i] = m.diag(pts[i]);
    });

    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = kdiag[i] * udelta[i];
        rep.per_point.push_back({pts[i], v});
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.values["diag_band_min"] = lo;
    rep.values["diag_band_max"] = hi;
    rep.index_value = hi;

    for (double delta : {0.05, 0.1, 0.2}) {
        double blo = INFINITY, bhi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const DiscPoint w = pts[i];
            const double kw = kdiag[i];
            for (double frac : {0.5, 0.99})
                for (int k = 0; k < 4; ++k) {
                    const DiscPoint z = mobius(w, std::polar(frac * delta, 0.5 * kPi * k));
                    const double v = std::norm(m.kernel(z, w)) / (kw * m.diag(z));
                    blo = std::min(blo, v);
                    bhi = std::max(bhi, v);
                }
        }
        std::ostringstream key;
        key << "near_diag_delta_" << delta;
        rep.values[key.str() + "_min"] = blo;
        rep.values[key.str() + "_max"] = bhi;
    }

    std::vector<std::vector<KernelNorm>> norms(n);
    if (m.radial()) {
        std::map<double, std::size_t> slot;
        for (DiscPoint w : pts) slot.emplace(std::abs(w), 0);
        std::vector<double> radii;
        for (auto& [rad, i] : slot) {
            i = radii.size();
            radii.push_back(rad);
        }
        std::vector<std::vector<KernelNorm>> by_radius(radii.size());
        parallel_for(radii.size(), [&](std::size_t i) {
            by_radius[i] = kernel_norms(m, DiscPoint(radii[i], 0.0), p_values, 0.995, 0.05);
        });
        for (std::size_t i = 0; i < n; ++i) norms[i] = by_radius[slot.at(std::abs(pts[i]))];
    } else {
        parallel_for(n, [&](std::size_t i) { norms[i] = kernel_norms(m, pts[i], p_values, 0.995, 0.05); });
    }
    for (std::size_t j = 0; j < p_values.size(); ++j) {
        const double p = p_values[j];
        double plo = INFINITY, phi = 0.0, slo = INFINITY, shi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double norm = norms[i][j].value;
            const double gap = 1.0 - std::abs(pts[i]);
            const double printed = std::pow(udelta[i], 1.0 / p) / (gap * gap);
            const double consistent = std::pow(udelta[i], 1.0 / p - 1.0);
            plo = std::min(plo, norm / printed);
            phi = std::max(phi, norm / printed);
            slo = std::min(slo, norm / consistent);
            shi = std::max(shi, norm / consistent);
        }
        std::ostringstream key;
        key << "p_" << p;
        rep.values["kernel_norm_printed_" + key.str() + "_min"] = plo;
        rep.values["kernel_norm_printed_" + key.str() + "_max"] = phi;
        rep.values["kernel_norm_consistent_" + key.str() + "_min"] = slo;
        rep.values["kernel_norm_consistent_" + key.str() + "_max"] = shi;
    }
    rep.verdict = std::isfinite(hi) && lo > 0.0 ? Verdict::finite : Verdict::inconclusive;
    return rep;
}

}  // namespace bl
