#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qwalk {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double worst = 0.0;  // worst residual observed
    double limit = 0.0;  // tolerance it was held against
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

/// Runs the full verification battery (deterministic seeds) and returns one
/// result per criterion.
std::vector<CriterionResult> run_acceptance();

bool all_passed(const std::vector<CriterionResult>& results);

nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results);

} // namespace qwalk
