// Inferomorphisms between bases, stocks and channels over them,
// connectedness and information carrying, plus site-level channels.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inferon/semantics.hpp"
#include "inferon/syntax.hpp"

namespace inferon {

// A pair (f_down on closed terms, f_up on predicate symbols) from a source
// base to a target base over an ambient base. f_up is arity-preserving and
// total: symbols without an explicit entry map to themselves. f_down is a
// finite partial table.
struct PreInferomorphism {
  std::string name;
  BaseRef source, target, ambient;
  std::map<Term, Term> down;
  std::map<int, std::map<std::string, std::string>> up;  // arity -> pred -> pred

  std::optional<Term> down_of(const Term& t) const;
  std::string up_of(int arity, const std::string& pred) const;
  std::vector<Term> down_domain() const;
};

// Homomorphic images of formulas. `up` renames predicates of inferons over
// the source base and rebases them to the target; `down` maps their argument
// terms and keeps the base; inferons over any other base are left alone and
// bottom is fixed. `down` is absent when a required term mapping is
// undefined. Both are restricted to the modality-free fragment; compound
// inferons are expanded first.
FormulaRef apply_up(const PreInferomorphism& f, const FormulaRef& phi);
std::optional<FormulaRef> apply_down(const PreInferomorphism& f, const FormulaRef& phi);

// Composite of f : P -> P' and g : P' -> P'': predicates translate through
// f then g, terms map back through g then f.
PreInferomorphism compose(const PreInferomorphism& g, const PreInferomorphism& f);
PreInferomorphism identity_morphism(const BaseRef& base, const BaseRef& ambient,
                                    const Universe& u);

struct ChuCounterexample {
  std::string extension;
  std::string pred;
  std::vector<Term> terms;
  Polarity pol = Polarity::Assertion;
  bool lhs = false, rhs = false;
};

struct ChuReport {
  bool ok = false;
  long long checked = 0;
  std::optional<ChuCounterexample> counterexample;  // first in enumeration order
};

// Verifies, for every extension C of the ambient base, every n-ary predicate
// R of the universe, every n-tuple over dom(f_down) and both polarities:
//
//   |-_{C u source} <R(f_down(t1)...f_down(tn)), b>
//     iff  |-_{C u target} <f_up(R)(t1...tn), b>
//
// Tuples enumerate and the first counterexample (in deterministic order) is
// reported. `parallel` fans the per-extension work out over OpenMP.
ChuReport check_chu(const PreInferomorphism& f, const Universe& u, const EvalConfig& cfg = {},
                    bool parallel = false);

struct QuasiReport {
  bool ok = false;
  bool restricted = false;  // surjectivity checked against reachable inferons only
  std::string missing;      // first unhit inferon
};

// Surjectivity of the induced inferon maps: the down image must cover the
// closed inferons over the source base, the up image those over the target.
// With `restrict_to_reachable`, coverage is only required for the supplied
// reachable pool (and the report says so).
QuasiReport is_quasi(const PreInferomorphism& f, const Universe& u,
                     bool restrict_to_reachable = false,
                     const std::vector<FormulaRef>& reachable = {});

struct Stock {
  std::string name;
  std::vector<Term> terms;
  BaseRef base;
};

struct StockChannel {
  std::string name;
  Stock core;
  std::vector<std::string> leg_names;
  std::map<std::string, PreInferomorphism> legs;   // into the core
  std::map<std::string, Stock> leg_stocks;
};

// Core term connecting tokens t_i (via leg i) and t_j (via leg j); the
// lexicographically least witness when several exist.
std::optional<Term> connected(const StockChannel& ch, const std::string& leg_i, const Term& ti,
                              const std::string& leg_j, const Term& tj);

struct CarriesReport {
  bool ok = false;
  bool connected = false;
  std::string detail;
};

// <R(t) @ source(f), b> carries <S(t') @ source(g), b> relative to the
// channel: t and t' are connected and, for every core term t'',
// <f_up(R)(t'') @ core, b>  |=_ambient  <g_up(S)(t'') @ core, b>.
CarriesReport carries(const StockChannel& ch, const std::string& leg_f, const Term& t,
                      const std::string& leg_g, const Term& t_prime, const std::string& pred_r,
                      const std::string& pred_s, Polarity pol, Evaluator& eval);

// The base {=> i | i in s}.
BaseRef base_of(const Site& s);

struct SiteChannel {
  Site source, target, label;
};

// Inclusion channel P ~> P' labelled by the relative complement P' \ P.
// Throws ModelError unless source is a subset of target.
SiteChannel make_site_channel(const Site& source, const Site& target);
SiteChannel compose(const SiteChannel& c1, const SiteChannel& c2);

}  // namespace inferon
