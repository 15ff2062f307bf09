#pragma once

#include <string>
#include <vector>

namespace plasmatw::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<int> criterion_ids();
std::string criterion_name(int id);

/// Runs one acceptance criterion; throws std::invalid_argument for unknown
/// ids. Heavy criteria run full simulations and may take minutes.
CriterionResult run_criterion(int id);

/// Runs all criteria in order, printing one pass/fail line each to stdout.
/// Returns the number of failures.
int run_all(bool stop_on_failure = false);

}  // namespace plasmatw::verify
