#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bergman_lab/io.hpp"

namespace bl::verify {

struct Check {
    std::string name;
    double value = 0.0;
    std::string relation;  // "<", "<=", ">", ">=", "in", "=="
    double bound = 0.0;
    double bound_hi = 0.0;  // upper end for "in"
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool passed() const;
};

struct Suite {
    std::vector<CriterionResult> criteria;
    bool all_passed() const;
};

// Closed-form acceptance checks 1..14. Progress lines go to log when given.
Suite run_suite(const std::function<void(const std::string&)>& log = {});
CriterionResult run_criterion(int id);

inline constexpr int kCriteria = 14;

io::json to_json(const Suite& s);
std::string summary(const Suite& s);

}  // namespace bl::verify
