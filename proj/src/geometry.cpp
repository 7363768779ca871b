#include "bergman_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace bl {

double pseudo_distance(DiscPoint z, DiscPoint w) {
    require_in_disc(z, "pseudo_distance");
    require_in_disc(w, "pseudo_distance");
    const double num = std::abs(z - w);
    if (num == 0.0) return 0.0;
    return std::min(num / std::abs(1.0 - std::conj(w) * z), std::nextafter(1.0, 0.0));
}

DiscPoint mobius(DiscPoint a, DiscPoint z) { return (a - z) / (1.0 - std::conj(a) * z); }

double mobius_jacobian(DiscPoint a, DiscPoint z) {
    const double s = one_minus_abs2(a);
    const double d = std::norm(1.0 - std::conj(a) * z);
    return s * s / (d * d);
}

bool PseudoDisk::contains(DiscPoint w) const { return pseudo_distance(center, w) < radius; }

double PseudoDisk::euclid_area() const { return kPi * euclid_radius * euclid_radius; }

PseudoDisk pseudo_disk(DiscPoint z, double r) {
    require_in_disc(z, "pseudo_disk");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("pseudo_disk: radius must lie in (0,1)");
    const double r2 = r * r;
    const double denom = 1.0 - r2 * std::norm(z);
    PseudoDisk D;
    D.center = z;
    D.radius = r;
    D.euclid_center = (1.0 - r2) * z / denom;
    D.euclid_radius = r * one_minus_abs2(z) / denom;
    return D;
}

bool CarlesonSet::contains(DiscPoint w) const {
    require_in_disc(w, "carleson_contains");
    return (std::conj(anchor) * mobius(anchor, w)).real() <= 0.0;
}

bool carleson_contains(const CarlesonSet& S, DiscPoint w) { return S.contains(w); }

double doubled_radius(double r) { return 2.0 * r / (1.0 + r * r); }

namespace {

// Points bucketed by bands of atanh|z|; each band keyed by angle.
class BandIndex {
public:
    explicit BandIndex(double band_width) : width_(band_width) {}

    void insert(std::size_t id, DiscPoint z) {
        bands_[band_of(z)].emplace(std::arg(z), id);
    }

    template <class F>
    void for_each_near(DiscPoint z, double rho, F&& f) const {
        const int b = band_of(z);
        const int span = static_cast<int>(std::ceil(std::atanh(rho) / width_)) + 1;
        const PseudoDisk D = pseudo_disk(z, rho);
        const double cabs = std::abs(D.euclid_center);
        const bool full = cabs <= D.euclid_radius * 1.0000001 + 1e-300;
        const double half = full ? kPi : std::asin(std::min(1.0, D.euclid_radius / cabs)) * 1.0000001 + 1e-12;
        const double mid = std::arg(z);
        for (int k = b - span; k <= b + span; ++k) {
            auto it = bands_.find(k);
            if (it == bands_.end()) continue;
            const auto& band = it->second;
            if (full || half >= kPi) {
                for (const auto& [ang, id] : band) f(id);
                continue;
            }
            scan(band, mid - half, mid + half, f);
        }
    }

private:
    template <class F>
    static void scan(const std::multimap<double, std::size_t>& band, double lo, double hi, F& f) {
        auto visit = [&](double a, double b) {
            for (auto it = band.lower_bound(a); it != band.end() && it->first <= b; ++it) f(it->second);
        };
        if (lo < -kPi) {
            visit(-kPi, hi);
            visit(lo + 2.0 * kPi, kPi);
        } else if (hi > kPi) {
            visit(lo, kPi);
            visit(-kPi, hi - 2.0 * kPi);
        } else {
            visit(lo, hi);
        }
    }

    int band_of(DiscPoint z) const { return static_cast<int>(std::floor(std::atanh(std::abs(z)) / width_)); }

    double width_;
    std::map<int, std::multimap<double, std::size_t>> bands_;
};

double invariant_area(double s) { return kPi * s * s / (1.0 - s * s); }

}  // namespace

std::vector<DiscPoint> audit_grid(double r_max, std::size_t n) {
    const std::size_t rings = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(double(n)))));
    const std::size_t per = std::max<std::size_t>(1, n / rings);
    std::vector<DiscPoint> g;
    g.reserve(rings * per);
    for (std::size_t i = 0; i < rings; ++i) {
        const double rho = r_max * std::sqrt(double(i + 1) / double(rings));
        const double shift = (i % 2) ? 0.5 : 0.0;
        for (std::size_t j = 0; j < per; ++j) g.push_back(std::polar(rho, 2.0 * kPi * (double(j) + shift) / double(per)));
    }
    return g;
}

std::vector<std::size_t> lattice_neighbors(const Lattice& L, DiscPoint z, double rho) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < L.points.size(); ++k)
        if (pseudo_distance(z, L.points[k]) < rho) out.push_back(k);
    return out;
}

LatticeCertificate certify_lattice(const Lattice& L, const std::vector<DiscPoint>& audit) {
    LatticeCertificate c;
    const double r = L.radius;
    BandIndex index(std::atanh(r / 2.0));
    for (std::size_t k = 0; k < L.points.size(); ++k) index.insert(k, L.points[k]);

    std::vector<PseudoDisk> quarter;
    quarter.reserve(L.points.size());
    for (auto a : L.points) quarter.push_back(pseudo_disk(a, r / 4.0));

    c.disjoint = true;
    c.min_separation = 1.0;
    for (std::size_t i = 0; i < L.points.size(); ++i) {
        index.for_each_near(L.points[i], r, [&](std::size_t j) {
            if (j <= i) return;
            c.min_separation = std::min(c.min_separation, pseudo_distance(L.points[i], L.points[j]));
            const double gap = std::abs(quarter[i].euclid_center - quarter[j].euclid_center);
            if (gap < quarter[i].euclid_radius + quarter[j].euclid_radius) c.disjoint = false;
        });
    }

    c.doubled_radius = doubled_radius(r);
    c.audit_points = audit.size();
    for (auto g : audit) {
        bool covered = false;
        int mult = 0;
        index.for_each_near(g, c.doubled_radius, [&](std::size_t k) {
            const double d = pseudo_distance(g, L.points[k]);
            if (d < r) covered = true;
            if (d < c.doubled_radius) ++mult;
        });
        if (covered) ++c.covered_points;
        c.max_multiplicity = std::max(c.max_multiplicity, mult);
    }
    c.multiplicity_ok = c.max_multiplicity <= L.multiplicity_bound;
    return c;
}

Lattice build_lattice(double r, double r_max, std::size_t audit_points) {
    if (!(r > 0.0)) throw DomainError("build_lattice: r must be positive");
    if (!(r < 1.0)) throw DomainError("build_lattice: r must be below 1 in the open disc");
    if (!(r_max > 0.0 && r_max < 1.0)) throw DomainError("build_lattice: r_max must lie in (0,1)");

    Lattice L;
    L.radius = r;
    L.r_max = r_max;

    const double sep = r / 2.0;
    const double step = r / 8.0;
    const double beta_max = std::atanh(r_max);
    const int rings = std::max(1, static_cast<int>(std::ceil(beta_max / std::atanh(step))));
    const double golden = kPi * (3.0 - std::sqrt(5.0));

    BandIndex index(std::atanh(sep));
    auto consider = [&](DiscPoint c) {
        bool free = true;
        index.for_each_near(c, sep, [&](std::size_t k) {
            if (free && pseudo_distance(c, L.points[k]) < sep) free = false;
        });
        if (!free) return;
        index.insert(L.points.size(), c);
        L.points.push_back(c);
    };

    consider(DiscPoint(0.0, 0.0));
    for (int k = 1; k <= rings; ++k) {
        const double rho = (k == rings) ? r_max : std::tanh(beta_max * double(k) / double(rings));
        const double alpha = step * (1.0 - rho * rho) / rho;
        const int n = std::max(3, static_cast<int>(std::ceil(2.0 * kPi / alpha)));
        const double offset = std::fmod(golden * double(k), 2.0 * kPi);
        for (int j = 0; j < n; ++j) consider(std::polar(rho, offset + 2.0 * kPi * double(j) / double(n)));
    }

    const double R2 = doubled_radius(r);
    const double q = r / 4.0;
    const double rho = (R2 + q) / (1.0 + R2 * q);
    L.multiplicity_bound = static_cast<int>(std::floor(invariant_area(rho) / invariant_area(q)));

    if (audit_points > 0) L.certificate = certify_lattice(L, audit_grid(r_max, audit_points));
    return L;
}

std::vector<DiscPoint> BoundaryLadder::ring(std::size_t j) const {
    std::vector<DiscPoint> pts;
    pts.reserve(static_cast<std::size_t>(samples_per_ring));
    for (int k = 0; k < samples_per_ring; ++k)
        pts.push_back(std::polar(radii.at(j), 2.0 * kPi * double(k) / double(samples_per_ring)));
    return pts;
}

std::vector<DiscPoint> BoundaryLadder::points() const {
    std::vector<DiscPoint> all;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        auto r = ring(j);
        all.insert(all.end(), r.begin(), r.end());
    }
    return all;
}

double BoundaryLadder::gap(std::size_t j) const { return 1.0 - radii.at(j); }

BoundaryLadder boundary_ladder(int n_rings, int samples_per_ring, double rho0) {
    if (n_rings < 2) throw DomainError("boundary_ladder: need at least 2 rings");
    if (samples_per_ring < 1) throw DomainError("boundary_ladder: need at least 1 sample per ring");
    BoundaryLadder B;
    B.samples_per_ring = samples_per_ring;
    for (int j = 0; j < n_rings; ++j) B.radii.push_back(1.0 - std::ldexp(1.0 - rho0, -j));
    return B;
}

}  // namespace bl
