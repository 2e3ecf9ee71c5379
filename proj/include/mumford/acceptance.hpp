#pragma once

// The end-to-end acceptance suite. Shared by the acceptance test binary and
// the `verify` subcommand.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mumford {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    nlohmann::json data;  // findings and counts backing the verdict
};

constexpr int kCriterionCount = 10;

/// Runs one criterion (1..10).
CriterionResult run_criterion(int id);

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool passed() const;
    /// {"schema":"v1","passed":..,"criteria":[..],"findings":{..}}
    nlohmann::json to_json() const;
};

/// Runs every criterion in order, calling `progress` after each one.
AcceptanceReport run_acceptance(const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace mumford
