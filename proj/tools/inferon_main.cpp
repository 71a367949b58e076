// Command-line front end: parse models, run derivability/support/prover/flow
// queries and scenarios, emit text or canonical JSON reports.
//
// Exit codes: 0 success or all-pass, 1 query false or scenario mismatch,
// 2 usage/parse error, 3 budget or depth exhaustion.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "inferon/derive.hpp"
#include "inferon/flow.hpp"
#include "inferon/parse.hpp"
#include "inferon/print.hpp"
#include "inferon/prover.hpp"
#include "inferon/report.hpp"
#include "inferon/scenario.hpp"
#include "inferon/semantics.hpp"

namespace {

using namespace inferon;

struct CommonOpts {
  std::string model;
  bool json = false;
  bool trace = false;
  int site_bound = -1;
  int ext_bound = -1;
  long long budget = 50'000'000;
  int depth = 12;
};

EvalConfig config_of(const CommonOpts& o) {
  EvalConfig cfg;
  cfg.site_size_cap = o.site_bound;
  cfg.ext_size_cap = o.ext_bound;
  cfg.step_budget = o.budget;
  cfg.trace = o.trace;
  return cfg;
}

QueryReport base_report(const CommonOpts& o, std::string query) {
  QueryReport r;
  r.query = std::move(query);
  r.depth = o.depth;
  r.site_bound = o.site_bound;
  r.ext_bound = o.ext_bound;
  r.budget = o.budget;
  return r;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_model = true) {
  if (with_model) cmd->add_option("--model", o.model, "model file")->required();
  cmd->add_flag("--json", o.json, "emit the canonical JSON report");
  cmd->add_flag("--trace", o.trace, "include a clause trace");
  cmd->add_option("--site-bound", o.site_bound, "max site subset size for contextual quantifiers");
  cmd->add_option("--ext-bound", o.ext_bound, "max candidate subset size for extensions");
  cmd->add_option("--budget", o.budget, "evaluation step budget");
}

int emit(const CommonOpts& o, QueryReport r, double secs) {
  r.seconds = secs;
  if (o.json)
    std::cout << to_json(r, o.trace);
  else
    std::cout << to_text(r, o.trace);
  return r.verdict ? 0 : 1;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Site site_for(const Model& m, const std::string& name) {
  auto it = m.universe.sites.find(name);
  if (it == m.universe.sites.end()) throw ModelError("unresolved site '" + name + "'");
  return it->second;
}

int run_derive(const CommonOpts& o, const std::string& base_expr, const std::string& context,
               const std::string& goal) {
  auto t0 = std::chrono::steady_clock::now();
  Model m = parse_model_file(o.model);
  BaseRef b = resolve_base_expr(base_expr, m);
  Site ctx = context.empty() ? Site{"", {}} : site_for(m, context);
  InferonicAtom g = parse_iatom_text(goal, m);
  DeriveCache cache;
  bool verdict = cache.derives(b, ctx, g);
  QueryReport r = base_report(o, "derive " + base_expr +
                                     (context.empty() ? "" : " with " + context) + " |- " + goal);
  r.verdict = verdict;
  if (o.trace && verdict) {
    auto tree = derivation(*b, ctx, g);
    if (tree) r.trace.push_back("derivation extracted and replayed");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(o, std::move(r), secs);
}

int run_support(const CommonOpts& o, const std::string& base_expr, const std::string& site,
                const std::string& theta, const std::string& formula, bool validity_mode) {
  auto t0 = std::chrono::steady_clock::now();
  Model m = parse_model_file(o.model);
  Query q;
  q.universe = &m.universe;
  q.base = resolve_base_expr(base_expr, m);
  if (!site.empty()) q.site = site_for(m, site);
  for (const auto& part : split_list(theta, ';')) q.theta.push_back(parse_formula_text(part, m));
  q.consequent = parse_formula_text(formula, m);
  Evaluator ev(m.universe, config_of(o));
  Judgment j = validity_mode ? ev.validity(q.theta, q.consequent) : ev.sequent(q);
  std::string what = validity_mode ? "validity" : "support";
  QueryReport r = base_report(o, what + " " + base_expr + (site.empty() ? "" : " at " + site) +
                                     (theta.empty() ? "" : " {" + theta + "}") + " |= " + formula);
  r.verdict = j.verdict;
  r.witness = j.witness;
  r.trace = j.trace;
  r.truncated = j.site_range_truncated;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(o, std::move(r), secs);
}

int run_prove(const CommonOpts& o, const std::string& theta, const std::string& formula) {
  auto t0 = std::chrono::steady_clock::now();
  Model m = parse_model_file(o.model);
  std::vector<FormulaRef> gamma;
  for (const auto& part : split_list(theta, ';')) gamma.push_back(parse_formula_text(part, m));
  FormulaRef goal = parse_formula_text(formula, m);
  ProveResult res = nj_prove(m.universe, gamma, goal, o.depth, config_of(o));
  QueryReport r = base_report(o, "prove {" + theta + "} |- " + formula);
  r.verdict = res.status == ProveStatus::Proved;
  if (res.status == ProveStatus::DepthExceeded) r.witness = "depth budget exceeded";
  if (res.proof && o.trace)
    r.trace.push_back("proof with " + std::to_string(res.proof->size()) + " rule applications");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int code = emit(o, std::move(r), secs);
  return res.status == ProveStatus::DepthExceeded ? 3 : code;
}

int run_flow(const CommonOpts& o, const std::string& chu, const std::string& quasi, bool reachable,
             const std::string& channel, const std::string& via, const std::string& from,
             const std::string& to, bool connected_mode) {
  auto t0 = std::chrono::steady_clock::now();
  Model m = parse_model_file(o.model);
  QueryReport r = base_report(o, "");
  if (!chu.empty()) {
    auto it = m.morphisms.find(chu);
    if (it == m.morphisms.end()) throw ModelError("unresolved morphism '" + chu + "'");
    ChuReport rep = check_chu(it->second, m.universe, config_of(o), true);
    r.query = "flow chu " + chu;
    r.verdict = rep.ok;
    if (rep.counterexample) {
      const auto& ce = *rep.counterexample;
      r.witness = "pred " + ce.pred + ", pol " + print(ce.pol) + ", at " + ce.extension;
    }
  } else if (!quasi.empty()) {
    auto it = m.morphisms.find(quasi);
    if (it == m.morphisms.end()) throw ModelError("unresolved morphism '" + quasi + "'");
    std::vector<FormulaRef> pool;
    if (reachable) {
      for (const auto& chk : m.checks) {
        if (chk.formula) formula_collect_inferons(chk.formula, pool);
        for (const auto& t : chk.theta) formula_collect_inferons(t, pool);
      }
    }
    QuasiReport rep = is_quasi(it->second, m.universe, reachable, pool);
    r.query = "flow quasi " + quasi + (reachable ? " (reachable)" : "");
    r.verdict = rep.ok;
    r.witness = rep.missing;
  } else if (!channel.empty()) {
    auto it = m.channels.find(channel);
    if (it == m.channels.end()) throw ModelError("unresolved channel '" + channel + "'");
    auto legs = split_list(via, ',');
    if (legs.size() != 2) throw ModelError("--via needs two legs");
    if (connected_mode) {
      Term tf = parse_term_text(from, m);
      Term tg = parse_term_text(to, m);
      auto w = connected(it->second, legs[0], tf, legs[1], tg);
      r.query = "flow connected " + channel + " via " + via + " : " + from + " ~> " + to;
      r.verdict = w.has_value();
      if (w) r.witness = "core " + print(*w);
    } else {
      InferonicAtom af = parse_iatom_text(from, m);
      InferonicAtom ag = parse_iatom_text(to, m);
      if (af.atom.arity() != 1 || ag.atom.arity() != 1 || af.pol != ag.pol)
        throw ModelError("carries needs unary atoms of one polarity");
      Evaluator ev(m.universe, config_of(o));
      CarriesReport rep = carries(it->second, legs[0], af.atom.args[0], legs[1], ag.atom.args[0],
                                  af.atom.pred, ag.atom.pred, af.pol, ev);
      r.query = "flow carries " + channel + " via " + via + " : " + from + " ~> " + to;
      r.verdict = rep.ok;
      r.witness = rep.detail;
    }
  } else {
    throw ModelError("flow needs one of --chu, --quasi, --channel");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(o, std::move(r), secs);
}

int run_scenarios(const CommonOpts& o, const std::string& dir, const std::string& name, bool all,
                  bool list_mode) {
  if (list_mode) {
    auto entries = list_scenarios(dir);
    if (o.json) {
      std::cout << scenario_index_json(entries);
    } else {
      for (const auto& [n, summary] : entries) std::cout << n << " - " << summary << "\n";
    }
    return 0;
  }
  std::vector<std::string> names;
  if (all) {
    for (const auto& [n, s] : list_scenarios(dir)) names.push_back(n);
  } else {
    names.push_back(name);
  }
  bool ok = true;
  for (const auto& n : names) {
    ScenarioReport rep = run_scenario(dir, n, config_of(o));
    ok = ok && rep.all_pass;
    std::cout << (o.json ? to_json(rep) : to_text(rep));
  }
  return ok ? 0 : 1;
}

int run_doctor(const std::string& dir) {
  std::cout << "inferon " << kVersion << "\n";
  std::cout << "data directory: " << dir << "\n";
  bool ok = true;
  try {
    auto entries = list_scenarios(dir);
    std::cout << "scenarios found: " << entries.size() << "\n";
    if (entries.empty()) ok = false;
  } catch (const std::exception& e) {
    std::cout << "scenario directory problem: " << e.what() << "\n";
    ok = false;
  }
  // Self-check: one derivability round trip through parser and engine.
  try {
    Model m = parse_model("pred s/0 pred f/0 base K { <s,1> => <f,1>. } base O { => <s,1>. }");
    DeriveCache cache;
    bool v =
        cache.derives(resolve_base_expr("K+O", m), Site{"", {}}, parse_iatom_text("<f,1>", m));
    std::cout << "self-check: " << (v ? "ok" : "FAILED") << "\n";
    ok = ok && v;
  } catch (const std::exception& e) {
    std::cout << "self-check error: " << e.what() << "\n";
    ok = false;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inferonic-base toolkit: derivability, support, proofs, information flow"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOpts check_o, derive_o, support_o, prove_o, flow_o, scen_o;

  auto* c_check = app.add_subcommand("check", "parse and validate a model file");
  c_check->add_option("--model", check_o.model, "model file")->required();

  std::string d_base = "0", d_context, d_goal;
  auto* c_derive = app.add_subcommand("derive", "atomic derivability in a base");
  add_common(c_derive, derive_o);
  c_derive->add_option("--base", d_base, "base expression, '+' unions");
  c_derive->add_option("--context", d_context, "context site name");
  c_derive->add_option("--goal", d_goal, "goal inferonic atom")->required();

  std::string s_base = "0", s_site, s_theta, s_formula;
  bool s_validity = false;
  auto* c_support = app.add_subcommand("support", "support relation over the model's universe");
  add_common(c_support, support_o);
  c_support->add_option("--base", s_base, "base expression");
  c_support->add_option("--site", s_site, "site name (switches to the contextual relation)");
  c_support->add_option("--theta", s_theta, "';'-separated antecedents");
  c_support->add_option("--formula", s_formula, "consequent formula")->required();
  c_support->add_flag("--validity", s_validity, "quantify over all bases from the candidate pool");

  std::string p_theta, p_formula;
  auto* c_prove = app.add_subcommand("prove", "natural-deduction proof search");
  add_common(c_prove, prove_o);
  c_prove->add_option("--theta", p_theta, "';'-separated antecedents");
  c_prove->add_option("--formula", p_formula, "goal formula")->required();
  c_prove->add_option("--depth", prove_o.depth, "iterative-deepening bound");

  std::string f_chu, f_quasi, f_channel, f_via, f_from, f_to;
  bool f_reachable = false, f_connected = false;
  auto* c_flow = app.add_subcommand("flow", "inferomorphism and channel checks");
  add_common(c_flow, flow_o);
  c_flow->add_option("--chu", f_chu, "check the translation condition of a morphism");
  c_flow->add_option("--quasi", f_quasi, "check surjectivity of the induced inferon maps");
  c_flow->add_flag("--reachable", f_reachable, "restrict surjectivity to reachable inferons");
  c_flow->add_option("--channel", f_channel, "channel for --carries/--connected");
  c_flow->add_option("--via", f_via, "two leg names, comma separated");
  c_flow->add_option("--from", f_from, "source side (<R(t),b> or a term)");
  c_flow->add_option("--to", f_to, "target side (<S(t),b> or a term)");
  c_flow->add_flag("--connected", f_connected, "check connectedness instead of carrying");

  std::string sc_dir = default_data_dir(), sc_name;
  bool sc_all = false;
  auto* c_scen = app.add_subcommand("scenario", "run or list the scenario corpus");
  add_common(c_scen, scen_o, false);
  c_scen->add_option("--data-dir", sc_dir, "scenario directory");
  auto* c_list = c_scen->add_subcommand("list", "list scenarios");
  c_list->fallthrough();
  auto* c_run = c_scen->add_subcommand("run", "run one scenario, or all");
  c_run->add_option("name", sc_name, "scenario name");
  c_run->add_flag("--all", sc_all, "run the whole corpus");
  c_run->fallthrough();
  c_scen->require_subcommand(1);

  std::string doc_dir = default_data_dir();
  auto* c_doctor = app.add_subcommand("doctor", "environment and self check");
  c_doctor->add_option("--data-dir", doc_dir, "scenario directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed()) {
      Model m = parse_model_file(check_o.model);
      std::cout << "ok: " << m.universe.bases.size() << " bases, " << m.universe.sites.size()
                << " sites, " << m.checks.size() << " checks\n";
      return 0;
    }
    if (c_derive->parsed()) return run_derive(derive_o, d_base, d_context, d_goal);
    if (c_support->parsed())
      return run_support(support_o, s_base, s_site, s_theta, s_formula, s_validity);
    if (c_prove->parsed()) return run_prove(prove_o, p_theta, p_formula);
    if (c_flow->parsed())
      return run_flow(flow_o, f_chu, f_quasi, f_reachable, f_channel, f_via, f_from, f_to,
                      f_connected);
    if (c_scen->parsed()) {
      if (sc_name.empty() && !sc_all && c_run->parsed())
        throw ModelError("scenario run needs a name or --all");
      return run_scenarios(scen_o, sc_dir, sc_name, sc_all, c_list->parsed());
    }
    if (c_doctor->parsed()) return run_doctor(doc_dir);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
