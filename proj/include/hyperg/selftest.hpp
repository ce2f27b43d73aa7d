#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperg {

/// One release-gate criterion. Tolerances and thresholds are pinned in the
/// implementation, not configurable: they are the contract.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  int checks = 0;
  std::vector<std::string> notes;  // failure details (capped)
};

CriterionResult run_criterion(int id);

/// Criteria ids relevant to a CLI subcommand's --selftest.
std::vector<int> criteria_for_command(const std::string& command);

/// Runs the given criteria (all nine when empty), printing one line per
/// criterion plus failure notes. Returns the number of failed criteria.
int run_criteria(std::vector<int> ids, std::ostream& os);

}  // namespace hyperg
