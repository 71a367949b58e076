#include "inferon/report.hpp"

#include <json.hpp>
#include <sstream>

namespace inferon {

using nlohmann::json;

std::string to_json(const QueryReport& r, bool with_trace) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = kVersion;
  j["query"] = r.query;
  j["verdict"] = r.verdict;
  if (!r.witness.empty()) j["witness"] = r.witness;
  json cfg;
  cfg["depth"] = r.depth;
  cfg["site_bound"] = r.site_bound;
  cfg["ext_bound"] = r.ext_bound;
  cfg["budget"] = r.budget;
  cfg["truncated"] = r.truncated;
  j["config"] = cfg;
  if (with_trace) j["trace"] = r.trace;
  return j.dump(2) + "\n";
}

std::string to_text(const QueryReport& r, bool with_trace) {
  std::ostringstream out;
  out << r.query << "\n";
  out << "verdict: " << (r.verdict ? "true" : "false") << "\n";
  if (!r.witness.empty()) out << "witness: " << r.witness << "\n";
  if (r.truncated) out << "warning: site quantifier range truncated\n";
  if (with_trace)
    for (const auto& line : r.trace) out << "  " << line << "\n";
  out << "elapsed: " << r.seconds << "s\n";
  return out.str();
}

std::string to_json(const ScenarioReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = kVersion;
  j["scenario"] = r.name;
  j["summary"] = r.summary;
  j["all_pass"] = r.all_pass;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["description"] = c.description;
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string to_text(const ScenarioReport& r) {
  std::ostringstream out;
  out << "scenario " << r.name;
  if (!r.summary.empty()) out << " - " << r.summary;
  out << "\n";
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.description << " (expected "
        << (c.expected ? "true" : "false") << ", got " << (c.actual ? "true" : "false") << ")";
    if (!c.pass && !c.detail.empty()) out << " -- " << c.detail;
    out << "\n";
  }
  out << (r.all_pass ? "all checks pass" : "MISMATCHES PRESENT") << "\n";
  return out.str();
}

std::string scenario_index_json(const std::vector<std::pair<std::string, std::string>>& entries) {
  json j;
  j["schema"] = kReportSchema;
  j["version"] = kVersion;
  json arr = json::array();
  for (const auto& [name, summary] : entries) {
    json e;
    e["name"] = name;
    e["summary"] = summary;
    arr.push_back(e);
  }
  j["scenarios"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace inferon
