#pragma once

#include <string>
#include <vector>

#include "opalg/config.hpp"
#include "opalg/index.hpp"

namespace opalg {

/// One line of the pass/fail ledger attached to every scenario report.
struct InvariantEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioResult {
  std::string id;
  std::string kind;
  std::string anchor;  ///< the operation the scenario exercises
  std::uint64_t seed = 0;
  json outputs;
  std::vector<InvariantEntry> invariants;
  bool soft_flag = false;   ///< reported-only conditions (bound violations)
  bool hard_failure = false;
  bool numerical_failure = false;
  std::string error;
};

struct RunOptions {
  double tolerance_scale = 1.0;
  bool override_seed = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  IndexOptions index;
};

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt);

/// Runs every scenario (in parallel up to opt.jobs; results ordered by
/// scenario index) and assembles the report document.
json run_all(const std::vector<Scenario>& scenarios, const RunOptions& opt);

/// Exit status for a finished report: 0 clean (soft flags allowed),
/// 1 invariant failure, 3 numerical failure.
int report_exit_code(const json& report);

json scenario_result_to_json(const ScenarioResult& r);

}  // namespace opalg
