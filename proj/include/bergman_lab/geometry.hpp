#pragma once

#include <vector>

#include "bergman_lab/common.hpp"

namespace bl {

// d(z,w) = |z-w| / |1 - conj(w) z|
double pseudo_distance(DiscPoint z, DiscPoint w);

// phi_a(z) = (a - z) / (1 - conj(a) z); an involution of the disc.
DiscPoint mobius(DiscPoint a, DiscPoint z);

// |phi_a'(z)|^2
double mobius_jacobian(DiscPoint a, DiscPoint z);

struct PseudoDisk {
    DiscPoint center;
    double radius = 0.0;
    DiscPoint euclid_center;
    double euclid_radius = 0.0;

    bool contains(DiscPoint w) const;  // strict: d(center, w) < radius
    double euclid_area() const;
};

PseudoDisk pseudo_disk(DiscPoint z, double r);

struct CarlesonSet {
    DiscPoint anchor;
    bool contains(DiscPoint w) const;
};

bool carleson_contains(const CarlesonSet& S, DiscPoint w);

struct LatticeCertificate {
    bool disjoint = false;             // Delta(a_k, r/4) pairwise disjoint
    double min_separation = 0.0;       // min pairwise pseudo-distance
    std::size_t audit_points = 0;
    std::size_t covered_points = 0;    // audit points in some Delta(a_k, r)
    int max_multiplicity = 0;          // max count of Delta(a_k, 2r) over audit
    double doubled_radius = 0.0;       // the "2r" radius used
    bool multiplicity_ok = false;

    double covering_fraction() const {
        return audit_points ? static_cast<double>(covered_points) / static_cast<double>(audit_points) : 0.0;
    }
    bool ok() const { return disjoint && covered_points == audit_points && multiplicity_ok; }
};

struct Lattice {
    double radius = 0.0;
    double r_max = 0.0;
    std::vector<DiscPoint> points;
    int multiplicity_bound = 0;
    LatticeCertificate certificate;
};

// Pseudo-hyperbolic doubling of a radius: tanh(2 atanh r).
double doubled_radius(double r);

Lattice build_lattice(double r, double r_max = 0.995, std::size_t audit_points = 10000);

// Audit grid of roughly n points in |z| <= r_max (polar, outermost ring at r_max).
std::vector<DiscPoint> audit_grid(double r_max, std::size_t n);

LatticeCertificate certify_lattice(const Lattice& L, const std::vector<DiscPoint>& audit);

// Indices of lattice points within pseudo-distance rho of z (brute force).
std::vector<std::size_t> lattice_neighbors(const Lattice& L, DiscPoint z, double rho);

struct BoundaryLadder {
    std::vector<double> radii;
    int samples_per_ring = 0;

    std::vector<DiscPoint> ring(std::size_t j) const;
    std::vector<DiscPoint> points() const;
    // 1 - radii[j], exact for the dyadic construction
    double gap(std::size_t j) const;
};

BoundaryLadder boundary_ladder(int n_rings, int samples_per_ring, double rho0 = 0.5);

}  // namespace bl
