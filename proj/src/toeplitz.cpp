#include "bergman_lab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "bergman_lab/transforms.hpp"
#include "bergman_lab/weights.hpp"

namespace bl {

ToeplitzMatrix::ToeplitzMatrix(ModelPtr model, DiscMeasure mu, std::vector<double> diagonal)
    : model_(std::move(model)), mu_(std::move(mu)), diagonal_form_(true), size_(static_cast<int>(diagonal.size())),
      diag_(std::move(diagonal)) {}

ToeplitzMatrix::ToeplitzMatrix(ModelPtr model, DiscMeasure mu, Eigen::MatrixXcd entries)
    : model_(std::move(model)), mu_(std::move(mu)), diagonal_form_(false), size_(static_cast<int>(entries.rows())),
      entries_(std::move(entries)) {}

cplx ToeplitzMatrix::operator()(int m, int n) const {
    if (diagonal_form_) return m == n ? cplx(diag_[static_cast<std::size_t>(m)]) : cplx(0.0);
    return entries_(m, n);
}

Eigen::MatrixXcd ToeplitzMatrix::dense() const {
    if (!diagonal_form_) return entries_;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(size_, size_);
    for (int k = 0; k < size_; ++k) M(k, k) = diag_[static_cast<std::size_t>(k)];
    return M;
}

ToeplitzMatrix ToeplitzMatrix::leading(int n) const {
    if (n < 0 || n >= size_) throw DomainError("leading block size out of range");
    if (diagonal_form_)
        return ToeplitzMatrix(model_, mu_, std::vector<double>(diag_.begin(), diag_.begin() + n + 1));
    return ToeplitzMatrix(model_, mu_, Eigen::MatrixXcd(entries_.topLeftCorner(n + 1, n + 1)));
}

namespace {

std::vector<double> raw_eigenvalues(const ToeplitzMatrix& T) {
    std::vector<double> ev;
    if (T.is_diagonal()) {
        ev = T.diagonal();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T.entries(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw PrecisionError("Hermitian eigensolver did not converge");
        ev.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    }
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace

ToeplitzMatrix assemble(const DiscMeasure& mu, ModelPtr m) {
    const int N = m->degree();
    const std::vector<double>& G = m->diagonal_norms();
    if (m->radial() && mu.radial()) {
        const std::vector<double> H = measure_radial_moments(mu, m->rule(), N);
        std::vector<double> lambda(H.size());
        for (std::size_t n = 0; n < H.size(); ++n) lambda[n] = H[n] / G[n];
        ToeplitzMatrix T(m, mu, std::move(lambda));
        const double top = *std::max_element(T.diagonal().begin(), T.diagonal().end());
        const double low = *std::min_element(T.diagonal().begin(), T.diagonal().end());
        if (low < -1e-8 * std::max(top, 0.0)) throw DegeneracyError("assembled Toeplitz matrix is not positive semidefinite");
        return T;
    }
    if (N > 1500) throw ConfigError("dense Toeplitz assembly is limited to degree 1500");
    const MomentMatrix Hm = measure_moments(mu, m->rule(), N);
    const Eigen::Index dim = N + 1;
    Eigen::MatrixXcd H(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index l = 0; l < dim; ++l) H(j, l) = Hm(static_cast<int>(j), static_cast<int>(l));
    Eigen::MatrixXcd C;
    if (m->radial()) {
        C = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index k = 0; k < dim; ++k) C(k, k) = 1.0 / std::sqrt(G[static_cast<std::size_t>(k)]);
    } else {
        C = m->coefficients();
    }
    Eigen::MatrixXcd M = (C * H * C.adjoint()).transpose();
    M = (0.5 * (M + M.adjoint())).eval();
    ToeplitzMatrix T(m, mu, std::move(M));
    const std::vector<double> ev = raw_eigenvalues(T);
    const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
    if (ev.back() < -1e-8 * scale) {
        std::ostringstream os;
        os << "assembled Toeplitz matrix is not positive semidefinite (min eigenvalue " << ev.back() << ")";
        throw DegeneracyError(os.str());
    }
    return T;
}

Spectrum spectrum(const ToeplitzMatrix& T) {
    Spectrum s;
    s.eigenvalues = raw_eigenvalues(T);
    for (double& v : s.eigenvalues) v = std::max(v, 0.0);
    return s;
}

namespace {

// int K_N(w,w) dmu(w)
double diagonal_integral(const DiscMeasure& mu, const KernelModel& m) {
    if (mu.kind() == MeasureKind::sum) {
        std::vector<double> parts;
        for (const DiscMeasure& part : mu.parts()) parts.push_back(diagonal_integral(part, m));
        return mu.scale() * pairwise_sum(parts);
    }
    if (mu.kind() == MeasureKind::weighted_area && has_exact_moments(mu.weight()) && !m.radial()) {
        // trace(C H C^*)
        const MomentMatrix Hm = exact_moments(mu.weight(), m.degree());
        const Eigen::Index dim = m.degree() + 1;
        Eigen::MatrixXcd H(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index l = 0; l < dim; ++l) H(j, l) = Hm(static_cast<int>(j), static_cast<int>(l));
        const Eigen::MatrixXcd& C = m.coefficients();
        return mu.scale() * (C * H * C.adjoint()).trace().real();
    }
    return integrate_measure_real(mu, [&](DiscPoint w, double) { return m.diag(w); }, m.rule());
}

}  // namespace

double trace_identity_check(const ToeplitzMatrix& T, const DiscMeasure& mu, const KernelModel& m) {
    const double lhs = pairwise_sum(spectrum(T).eigenvalues);
    return std::abs(lhs - diagonal_integral(mu, m));
}

cplx apply(const DiscMeasure& mu, const KernelModel& m, const std::vector<cplx>& f, DiscPoint z) {
    require_in_disc(z, "apply");
    if (f.size() > static_cast<std::size_t>(m.degree() + 1)) throw DomainError("apply: polynomial degree exceeds the model degree");
    return integrate_polynomial_product(mu, f, m.kernel_coeffs(z), m.rule());
}

cplx apply_matrix(const ToeplitzMatrix& T, const std::vector<cplx>& f, DiscPoint z) {
    require_in_disc(z, "apply");
    const std::vector<cplx> beta = T.model().to_basis(f);
    const std::vector<cplx> e = T.model().basis(z);
    std::vector<cplx> terms(beta.size());
    for (int mi = 0; mi < T.size(); ++mi) {
        cplx g = 0.0;
        if (T.is_diagonal()) {
            g = T.diagonal()[static_cast<std::size_t>(mi)] * beta[static_cast<std::size_t>(mi)];
        } else {
            for (int n = 0; n < T.size(); ++n) g += T(mi, n) * beta[static_cast<std::size_t>(n)];
        }
        terms[static_cast<std::size_t>(mi)] = g * e[static_cast<std::size_t>(mi)];
    }
    return pairwise_sum(terms);
}

CriterionReport essential_norm_estimate(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t,
                                        double r, const BoundaryLadder& ladder) {
    CriterionReport rep;
    rep.name = "essential_norm";
    rep.parameters = {{"p", p}, {"q", q}, {"t", t}, {"r", r}};
    if (!(p > 0.0 && q > 0.0)) throw DomainError("essential_norm_estimate: p and q must be positive");
    if (q < p) {
        rep.index_value = 0.0;
        rep.verdict = Verdict::vanishing;
        rep.notes["q_below_p"] = "bounded and compact coincide when q < p; the essential norm is 0 whenever the qlp index is finite";
        return rep;
    }
    const double e = 1.0 / p - 1.0 / q;
    const std::vector<DiscPoint> pts = ladder.points();
    std::vector<double> hat(pts.size()), ud(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        ud[k] = mass(m.weight(), Region::pseudo_disk(pts[k], r), 24);
        hat[k] = disk_mass(mu, pts[k], r, 24) / ud[k];
    });
    std::vector<DiscPoint> kernel_pts;
    std::vector<std::size_t> kernel_idx;
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (resolved(m, pts[k])) {
            kernel_pts.push_back(pts[k]);
            kernel_idx.push_back(k);
        }
    const std::vector<double> tilde = BerezinEvaluator(mu, m, t).evaluate(kernel_pts);
    std::vector<double> tilde_at(pts.size(), -1.0);
    for (std::size_t i = 0; i < kernel_idx.size(); ++i) tilde_at[kernel_idx[i]] = tilde[i];

    const std::size_t per = static_cast<std::size_t>(ladder.samples_per_ring);
    std::vector<RingValue> tilde_trend, printed_trend;
    for (std::size_t j = 0; j < ladder.radii.size(); ++j) {
        double mh = 0.0, mt = 0.0, mp = 0.0;
        bool have_tilde = true;
        for (std::size_t k = j * per; k < (j + 1) * per; ++k) {
            mh = std::max(mh, hat[k] / std::pow(ud[k], e));
            mp = std::max(mp, hat[k] * std::pow(ud[k], e));
            if (tilde_at[k] < 0.0) have_tilde = false;
            else mt = std::max(mt, tilde_at[k] / std::pow(ud[k], e));
        }
        rep.ring_trend.push_back({ladder.radii[j], mh});
        printed_trend.push_back({ladder.radii[j], mp});
        if (have_tilde) tilde_trend.push_back({ladder.radii[j], mt});
    }
    rep.index_value = rep.ring_trend.back().value;
    rep.verdict = classify_trend(rep.ring_trend);
    rep.values["estimate_hat"] = rep.index_value;
    rep.values["estimate_printed"] = printed_trend.back().value;
    rep.values["tilde_rings"] = static_cast<double>(tilde_trend.size());
    if (!tilde_trend.empty()) rep.values["estimate_tilde"] = tilde_trend.back().value;

    CriterionReport tilde_rep;
    tilde_rep.name = "essential_norm_tilde";
    tilde_rep.parameters = rep.parameters;
    tilde_rep.ring_trend = tilde_trend;
    tilde_rep.index_value = tilde_trend.empty() ? 0.0 : tilde_trend.back().value;
    tilde_rep.verdict = classify_trend(tilde_trend);
    rep.children.push_back(tilde_rep);

    CriterionReport printed_rep;
    printed_rep.name = "essential_norm_printed";
    printed_rep.parameters = rep.parameters;
    printed_rep.ring_trend = printed_trend;
    printed_rep.index_value = printed_trend.back().value;
    printed_rep.verdict = classify_trend(printed_trend);
    rep.children.push_back(printed_rep);
    return rep;
}

SchattenFunction SchattenFunction::power(double p) {
    if (!(p >= 1.0)) throw ConfigError("h = power(p) needs p >= 1");
    SchattenFunction h;
    h.is_power = true;
    h.p = p;
    return h;
}

SchattenFunction SchattenFunction::table(std::vector<double> x, std::vector<double> y) {
    if (x.size() < 2 || x.size() != y.size()) throw ConfigError("h table needs at least two (x, y) pairs");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= 0.0) || !(y[i] >= 0.0)) throw ConfigError("h table values must be nonnegative");
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw ConfigError("h table abscissae must be strictly increasing");
        const double slope = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        if (slope < 0.0) throw ConfigError("h must be increasing");
        if (slope < prev_slope - 1e-12 * std::abs(prev_slope)) throw ConfigError("h must be convex");
        prev_slope = slope;
    }
    SchattenFunction h;
    h.is_power = false;
    h.x = std::move(x);
    h.y = std::move(y);
    return h;
}

double SchattenFunction::operator()(double v) const {
    if (is_power) return std::pow(v, p);
    if (v <= x.front()) return y.front();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), v) - x.begin());
    if (i >= x.size()) i = x.size() - 1;
    const double s = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + s * (v - x[i - 1]);
}

std::string SchattenFunction::describe() const {
    std::ostringstream os;
    if (is_power) os << "power(" << p << ")";
    else os << "table(" << x.size() << " points)";
    return os.str();
}

namespace {

double schatten_value(const KernelModel& m, const SchattenFunction& h, double C, double r,
                      double R, KernelProxy proxy, const std::function<double(DiscPoint)>& tilde, bool radial) {
    const std::vector<RadialNode> radial_nodes = radial_panel_rule(R);
    const int angular = radial ? 1 : 128;
    std::vector<double> ring(radial_nodes.size());
    parallel_for(radial_nodes.size(), [&](std::size_t i) {
        const RadialNode& n = radial_nodes[i];
        std::vector<double> terms(static_cast<std::size_t>(angular));
        for (int k = 0; k < angular; ++k) {
            const DiscPoint z = std::polar(n.radius, 2.0 * kPi * k / angular);
            const double phi = proxy == KernelProxy::diagonal
                                   ? m.diag(z)
                                   : mass(m.weight(), Region::pseudo_disk(z, r), 24) / std::pow(n.s / (1.0 + n.radius), 4);
            terms[static_cast<std::size_t>(k)] = h(C * tilde(z)) * phi * m.weight().at(z, n.s);
        }
        ring[i] = pairwise_sum(terms) * n.weight * 2.0 * kPi / angular;
    });
    return pairwise_sum(ring);
}

}  // namespace

CriterionReport schatten_integral(const DiscMeasure& mu, const KernelModel& m, const SchattenFunction& h, double C,
                                  double r, const SchattenOptions& opt) {
    if (!(C > 0.0)) throw DomainError("schatten_integral: C must be positive");
    CriterionReport rep;
    rep.name = "schatten_integral";
    rep.parameters = {{"C", C}, {"r", r}, {"r_max", opt.r_max}, {"degree", static_cast<double>(m.degree())}};
    if (h.is_power) rep.parameters["h_power"] = h.p;
    rep.notes["h"] = h.describe();
    rep.notes["proxy"] = opt.proxy == KernelProxy::diagonal ? "K_N(z,z)" : "u(Delta(z,r))/(1-|z|)^4";

    const bool radial = m.radial() && mu.radial();
    const BerezinEvaluator evaluator(mu, m, 2.0);
    const std::function<double(DiscPoint)> tilde = [&](DiscPoint z) { return evaluator(z); };

    std::vector<double> seq;
    for (double R : opt.sweep) {
        const double v = schatten_value(m, h, C, r, R, opt.proxy, tilde, radial);
        seq.push_back(v);
        rep.ring_trend.push_back({R, v});
    }
    rep.index_value = schatten_value(m, h, C, r, opt.r_max, opt.proxy, tilde, radial);
    rep.values["value_at_r_max"] = rep.index_value;
    if (!seq.empty()) rep.values["ratio_r_max_to_first"] = rep.index_value / seq.front();
    rep.values["resolved_at_r_max"] = resolved(m, DiscPoint(opt.r_max, 0.0)) ? 1.0 : 0.0;
    rep.verdict = classify_sequence(seq);
    rep.notes["verdict_meaning"] = rep.verdict == Verdict::finite ? "convergent" : verdict_name(rep.verdict);
    return rep;
}

CriterionReport schatten_membership(const ToeplitzMatrix& T, const SchattenFunction& h, double C) {
    if (!(C > 0.0)) throw DomainError("schatten_membership: C must be positive");
    CriterionReport rep;
    rep.name = "schatten_membership";
    rep.parameters = {{"C", C}, {"degree", static_cast<double>(T.size() - 1)}};
    if (h.is_power) rep.parameters["h_power"] = h.p;
    rep.notes["h"] = h.describe();
    const int N = T.size() - 1;
    std::vector<double> seq;
    for (int n : {N / 4, N / 2, N}) {
        const Spectrum s = spectrum(n == N ? T : T.leading(n));
        std::vector<double> terms;
        for (double l : s.eigenvalues) terms.push_back(h(C * l));
        const double v = pairwise_sum(terms);
        seq.push_back(v);
        rep.ring_trend.push_back({static_cast<double>(n), v});
    }
    rep.index_value = seq.back();
    rep.values["sum"] = seq.back();
    rep.values["relative_change_last_doubling"] = seq.back() > 0.0 ? std::abs(seq[2] - seq[1]) / seq.back() : 0.0;
    rep.verdict = classify_sequence(seq);
    rep.notes["verdict_meaning"] = rep.verdict == Verdict::finite ? "convergent" : verdict_name(rep.verdict);
    return rep;
}

}  // namespace bl
