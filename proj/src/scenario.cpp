#include "inferon/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "inferon/derive.hpp"
#include "inferon/flow.hpp"
#include "inferon/print.hpp"

namespace inferon {

std::string default_data_dir() {
  if (const char* env = std::getenv("INFERON_DATA_DIR")) return env;
  return "data/scenarios";
}

std::vector<std::pair<std::string, std::string>> list_scenarios(const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ModelError("scenario directory not found: " + dir);
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".inf") continue;
    Model m = parse_model_file(e.path().string());
    out.emplace_back(e.path().stem().string(), m.summary);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CheckResult run_check(const Model& m, const Check& c, Evaluator& eval) {
  CheckResult r;
  r.description = c.description;
  r.expected = c.expected;

  auto site_of = [&](const std::optional<std::string>& name) -> Site {
    if (!name) return Site{"", {}};
    return m.universe.sites.at(*name);
  };

  switch (c.kind) {
    case Check::Kind::Derive: {
      Site ctx = site_of(c.site);
      r.actual = eval.derive_cache().derives(c.base, ctx, c.goal);
      break;
    }
    case Check::Kind::Support:
    case Check::Kind::Sequent: {
      Query q;
      q.universe = &m.universe;
      q.base = c.base;
      if (c.site) q.site = site_of(c.site);
      q.theta = c.theta;
      q.consequent = c.formula;
      Judgment j = eval.sequent(q);
      r.actual = j.verdict;
      r.detail = j.witness;
      break;
    }
    case Check::Kind::Chu: {
      ChuReport rep = check_chu(m.morphisms.at(c.morphism), m.universe, eval.config());
      r.actual = rep.ok;
      if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        r.detail = "counterexample: pred " + ce.pred + "(";
        for (std::size_t i = 0; i < ce.terms.size(); ++i)
          r.detail += (i ? "," : "") + print(ce.terms[i]);
        r.detail += "), pol " + print(ce.pol) + ", at " + ce.extension;
      }
      break;
    }
    case Check::Kind::Quasi: {
      std::vector<FormulaRef> reachable;
      if (c.quasi_reachable) {
        // Reachable inferons: those mentioned anywhere in the model's checks.
        for (const auto& chk : m.checks) {
          if (chk.formula) formula_collect_inferons(chk.formula, reachable);
          for (const auto& t : chk.theta) formula_collect_inferons(t, reachable);
        }
      }
      QuasiReport rep =
          is_quasi(m.morphisms.at(c.morphism), m.universe, c.quasi_reachable, reachable);
      r.actual = rep.ok;
      r.detail = rep.missing;
      break;
    }
    case Check::Kind::Carries: {
      CarriesReport rep = carries(m.channels.at(c.channel), c.leg_f, c.term_f, c.leg_g, c.term_g,
                                  c.pred_r, c.pred_s, c.pol, eval);
      r.actual = rep.ok;
      r.detail = rep.detail;
      break;
    }
    case Check::Kind::Connected: {
      auto w = connected(m.channels.at(c.channel), c.leg_f, c.term_f, c.leg_g, c.term_g);
      r.actual = w.has_value();
      if (w) r.detail = "witness " + print(*w);
      break;
    }
    case Check::Kind::Consistent: {
      BaseRef b = c.base;
      if (c.site) b = base_union(b, base_of(site_of(c.site)));
      r.actual = consistent(*b, m.universe);
      break;
    }
    case Check::Kind::Constraint: {
      // if P |= theta0 at any site S and P |= theta1 at any site S', then
      // P |= formula at S u S'; swept over all site pairs drawn from the
      // scenario's declared sites plus the empty site.
      std::vector<Site> sites;
      sites.push_back(Site{"", {}});
      for (const auto& [n, s] : m.universe.sites) sites.push_back(s);
      r.actual = true;
      for (const auto& s1 : sites) {
        for (const auto& s2 : sites) {
          Query qa{&m.universe, c.base, s1, {}, c.theta[0]};
          Query qb{&m.universe, c.base, s2, {}, c.theta[1]};
          if (!eval.supports(qa).verdict || !eval.supports(qb).verdict) continue;
          Query qc{&m.universe, c.base, site_union(s1, s2), {}, c.formula};
          if (!eval.supports(qc).verdict) {
            r.actual = false;
            r.detail = "fails at sites " + (s1.name.empty() ? "{}" : s1.name) + ", " +
                       (s2.name.empty() ? "{}" : s2.name);
            break;
          }
        }
        if (!r.actual) break;
      }
      break;
    }
  }
  r.pass = r.actual == c.expected;
  return r;
}

ScenarioReport run_model_checks(const Model& m, const std::string& name, const EvalConfig& cfg) {
  ScenarioReport rep;
  rep.name = name;
  rep.summary = m.summary;
  Evaluator eval(m.universe, cfg);
  rep.all_pass = true;
  for (const auto& c : m.checks) {
    CheckResult r = run_check(m, c, eval);
    rep.all_pass = rep.all_pass && r.pass;
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

ScenarioReport run_scenario(const std::string& dir, const std::string& name,
                            const EvalConfig& cfg) {
  namespace fs = std::filesystem;
  fs::path p = fs::path(dir) / (name + ".inf");
  if (!fs::exists(p)) throw ModelError("unknown scenario: " + name);
  Model m = parse_model_file(p.string());
  return run_model_checks(m, name, cfg);
}

}  // namespace inferon
