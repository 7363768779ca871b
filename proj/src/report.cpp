#include "bergman_lab/report.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::finite: return "finite";
        case Verdict::vanishing: return "vanishing";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double max_value(const std::vector<RingValue>& trend) {
    double m = 0.0;
    for (const auto& rv : trend) m = std::max(m, rv.value);
    return m;
}

Verdict classify_trend(const std::vector<RingValue>& trend, double growth_tol) {
    if (trend.size() < 3) return Verdict::inconclusive;
    for (const auto& rv : trend)
        if (std::isinf(rv.value)) return Verdict::divergent;
    const std::size_t n = trend.size();
    const double gmax = max_value(trend);
    const double a = trend[n - 3].value, b = trend[n - 2].value, c = trend[n - 1].value;
    if (c <= std::max(1e-3 * gmax, 1e-12) && a >= b && b >= c) return Verdict::vanishing;
    if (n >= 4) {
        bool growing = true;
        for (std::size_t k = n - 3; k < n; ++k) {
            const double prev = trend[k - 1].value;
            if (!(prev > 0.0 && trend[k].value > (1.0 + growth_tol) * prev)) growing = false;
        }
        if (growing) return Verdict::divergent;
    }
    return Verdict::finite;
}

Verdict classify_sequence(const std::vector<double>& values) {
    if (values.size() < 3) return Verdict::inconclusive;
    for (double v : values)
        if (std::isinf(v)) return Verdict::divergent;
    const std::size_t n = values.size();
    const double d1 = values[n - 2] - values[n - 3];
    const double d2 = values[n - 1] - values[n - 2];
    const double scale = std::max(std::abs(values[n - 1]), 1e-300);
    if (std::abs(d2) <= 1e-12 * scale) return Verdict::finite;
    if (d2 < 0.0) return Verdict::finite;
    if (d1 <= 0.0) return Verdict::divergent;
    return d2 >= 0.9 * d1 ? Verdict::divergent : Verdict::finite;
}

}  // namespace bl
