#pragma once

#include <map>
#include <string>
#include <vector>

#include "bergman_lab/common.hpp"

namespace bl {

enum class Verdict { finite, vanishing, divergent, inconclusive };

const char* verdict_name(Verdict v);

struct PointValue {
    DiscPoint z;
    double value = 0.0;
};

struct RingValue {
    double radius = 0.0;
    double value = 0.0;
};

struct CriterionReport {
    std::string name;
    std::map<std::string, double> parameters;
    double index_value = 0.0;  // +inf allowed
    std::vector<PointValue> per_point;
    std::vector<RingValue> ring_trend;
    Verdict verdict = Verdict::inconclusive;
    std::map<std::string, double> values;       // named sub-indices, bands, ratios
    std::map<std::string, std::string> notes;
    std::vector<CriterionReport> children;
};

// Ring-trend policy: vanishing when the last ring is below
// max(1e-3 * global max, 1e-12) and the last three rings are nonincreasing;
// divergent when the last three consecutive ratios all exceed 1 + growth_tol;
// finite otherwise.
Verdict classify_trend(const std::vector<RingValue>& trend, double growth_tol = 0.02);

// Sequence policy (integral sweeps, N-doubling sums): with the last three
// values, increments d1, d2: divergent when d2 >= 0.9 d1 (non-shrinking),
// finite otherwise.
Verdict classify_sequence(const std::vector<double>& values);

double max_value(const std::vector<RingValue>& trend);

}  // namespace bl
