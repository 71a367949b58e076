// Bounded-universe evaluator for the support relations: the propositional
// and first-order clauses, compound inferons, agent modalities, and the
// contextual (site-indexed) variant. Every "for all C >= B" ranges over the
// universe's candidate-rule pool and every "for all sites P'" over bounded
// subsets of the universe's inferonic-atom vocabulary, so each verdict is an
// exact decision for the finitized relation.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "inferon/derive.hpp"
#include "inferon/syntax.hpp"

namespace inferon {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalConfig {
  // Site quantifier: full powerset while the inferonic-atom vocabulary stays
  // within this many atoms, otherwise singletons + the empty site (and the
  // judgment is flagged as truncated).
  int site_powerset_limit = 12;
  // Explicit subset-size cap for the site quantifier; -1 = automatic rule
  // above.
  int site_size_cap = -1;
  // Subset-size cap for extension enumeration; -1 = all subsets.
  int ext_size_cap = -1;
  long long step_budget = 50'000'000;
  bool trace = false;
  // Overrides the inferon pool used by the (or)/(bot)/(exists) quantifiers;
  // empty = vocabulary atoms over the bases referenced by the query.
  std::vector<BaseRef> quantifier_bases;
};

struct Query {
  const Universe* universe = nullptr;
  BaseRef base;
  // Disengaged: the site-free relation. Engaged (possibly with no atoms):
  // the contextual relation.
  std::optional<Site> site;
  std::vector<FormulaRef> theta;
  FormulaRef consequent;
};

struct Judgment {
  bool verdict = false;
  std::vector<std::string> trace;
  std::string witness;  // refuting extension/site/instance, if any
  bool site_range_truncated = false;
  long long steps = 0;
};

class Evaluator {
 public:
  explicit Evaluator(const Universe& u, EvalConfig cfg = {});

  // Support of a single formula (theta ignored if present in q).
  Judgment supports(const Query& q);
  // Sequent support Theta |= phi; empty Theta collapses to supports.
  Judgment sequent(const Query& q);
  // Bounded validity: the sequent holds over every base assembled from the
  // universe's candidate pool, with no site parameter.
  Judgment validity(const std::vector<FormulaRef>& theta, const FormulaRef& phi);

  // base u S for every S within the candidate pool (deduplicated, includes
  // the base itself).
  std::vector<BaseRef> extensions(const BaseRef& base);

  // The site quantifier range for this universe and configuration.
  const std::vector<Site>& site_range();
  bool site_range_is_truncated() const;

  const Universe& universe() const { return u_; }
  const EvalConfig& config() const { return cfg_; }
  DeriveCache& derive_cache() { return dcache_; }
  long long steps() const { return steps_; }

 private:
  bool eval(int base, int site, const FormulaRef& f, int depth);
  bool eval_sequent(int base, int site, const std::vector<int>& theta_ids,
                    const std::vector<FormulaRef>& theta, const FormulaRef& f, int depth);
  bool at_clause(int base, int site, const FormulaRef& inferon);

  int intern_base(const BaseRef& b);
  int intern_formula(const FormulaRef& f);
  int intern_site(const Site& s);
  const std::vector<int>& extension_ids(int base);
  const std::vector<Term>& terms();
  void build_pool(const Query& q);
  void tick();
  void note(int depth, const std::string& line);

  const Universe& u_;
  EvalConfig cfg_;
  DeriveCache dcache_;
  long long steps_ = 0;
  std::vector<std::string> trace_;
  std::string witness_;

  // Interning tables; ids are dense and assigned in evaluation order. Every
  // pointer that enters a pointer-keyed map is retained, so a recycled heap
  // address can never alias an old id.
  std::unordered_map<const Base*, int> base_ptr_ids_;
  std::unordered_map<std::string, int> base_key_ids_;
  std::vector<BaseRef> bases_;
  std::vector<BaseRef> retained_bases_;
  std::unordered_map<const Formula*, int> formula_ptr_ids_;
  std::unordered_map<std::string, int> formula_key_ids_;
  std::vector<FormulaRef> retained_formulas_;
  std::unordered_map<std::string, int> site_key_ids_;
  std::vector<Site> interned_sites_;
  std::unordered_map<int, std::vector<int>> ext_cache_;
  std::unordered_map<long long, int> union_site_cache_;  // (site,site) -> site

  std::vector<Site> site_range_;
  bool site_range_ready_ = false;
  std::vector<Term> terms_;
  bool terms_ready_ = false;

  std::vector<FormulaRef> pool_;  // quantifier inferons for the active query
  std::vector<int> pool_ids_;
  std::string pool_key_;

  struct Key {
    int base, site, tid, fid;  // tid = -1 for plain support
    bool operator==(const Key& o) const {
      return base == o.base && site == o.site && tid == o.tid && fid == o.fid;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = static_cast<std::size_t>(k.base);
      h = h * 1000003u + static_cast<std::size_t>(k.site + 2);
      h = h * 1000003u + static_cast<std::size_t>(k.tid + 2);
      h = h * 1000003u + static_cast<std::size_t>(k.fid);
      return h;
    }
  };
  std::map<std::vector<int>, int> theta_key_ids_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace inferon
