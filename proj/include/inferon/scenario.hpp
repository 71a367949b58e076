// Executable scenario corpus: each scenario is a DSL file declaring a
// universe plus `check` lines with expected verdicts. Running a scenario
// executes every check and reports mismatches.
#pragma once

#include <string>
#include <vector>

#include "inferon/parse.hpp"
#include "inferon/semantics.hpp"

namespace inferon {

struct CheckResult {
  std::string description;
  bool expected = false;
  bool actual = false;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string name;
  std::string summary;
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

// INFERON_DATA_DIR if set, else ./data/scenarios.
std::string default_data_dir();

std::vector<std::pair<std::string, std::string>> list_scenarios(const std::string& dir);

ScenarioReport run_scenario(const std::string& dir, const std::string& name,
                            const EvalConfig& cfg = {});

// Executes the checks of an already-parsed model (scenario files and ad-hoc
// models alike).
ScenarioReport run_model_checks(const Model& m, const std::string& name, const EvalConfig& cfg = {});

// Evaluates one check against a model; used by the runner and the CLI.
CheckResult run_check(const Model& m, const Check& c, Evaluator& eval);

}  // namespace inferon
