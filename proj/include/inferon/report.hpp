// Machine-readable reports. The canonical JSON form is byte-deterministic
// for identical inputs: keys are sorted and timings are excluded.
#pragma once

#include <string>

#include "inferon/scenario.hpp"
#include "inferon/semantics.hpp"

namespace inferon {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "inferon.report/1";

struct QueryReport {
  std::string query;  // echo of the query as given
  bool verdict = false;
  std::string witness;
  std::vector<std::string> trace;
  // configuration actually used
  int depth = 0;
  int site_bound = -1;
  int ext_bound = -1;
  long long budget = 0;
  bool truncated = false;
  double seconds = 0;  // text output only, never in the canonical form
};

std::string to_json(const QueryReport& r, bool with_trace);
std::string to_text(const QueryReport& r, bool with_trace);

std::string to_json(const ScenarioReport& r);
std::string to_text(const ScenarioReport& r);

std::string scenario_index_json(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace inferon
