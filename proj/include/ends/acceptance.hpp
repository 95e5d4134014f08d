#pragma once

#include "ends/json_io.hpp"

namespace ends {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    Json artifact;
};

// The workbench's exit gate: each criterion pins its own thresholds.
CriterionResult run_criterion(int number, unsigned long long seed);
std::vector<CriterionResult> run_acceptance(unsigned long long seed);

} // namespace ends
