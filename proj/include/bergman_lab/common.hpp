#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bl {

using cplx = std::complex<double>;

// A point of the open unit disc.
using DiscPoint = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void require_in_disc(DiscPoint z, const char* what);

// 1 - |z|^2 computed as (1-|z|)(1+|z|).
double one_minus_abs2(DiscPoint z);

std::string format_point(DiscPoint z);

// Worker count: hardware concurrency capped by BERGMAN_LAB_THREADS.
unsigned worker_count();

// Runs body(i) for i in [0, n) on the worker pool. Each index must write only
// its own output slot; results are then independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-order pairwise summation.
double pairwise_sum(const double* x, std::size_t n);
cplx pairwise_sum(const cplx* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }
inline cplx pairwise_sum(const std::vector<cplx>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace bl
