#include "inferon/semantics.hpp"

#include <algorithm>
#include <functional>

#include "inferon/print.hpp"

namespace inferon {

Evaluator::Evaluator(const Universe& u, EvalConfig cfg) : u_(u), cfg_(cfg) {}

void Evaluator::tick() {
  if (++steps_ > cfg_.step_budget)
    throw BudgetError("evaluation step budget exceeded (" + std::to_string(cfg_.step_budget) + ")");
}

void Evaluator::note(int depth, const std::string& line) {
  if (cfg_.trace && depth <= 6 && trace_.size() < 400)
    trace_.push_back(std::string(2 * static_cast<std::size_t>(depth), ' ') + line);
}

// ---------------------------------------------------------------------------
// Interning

int Evaluator::intern_base(const BaseRef& b) {
  const BaseRef& use = b ? b : Base::empty_base();
  auto pit = base_ptr_ids_.find(use.get());
  if (pit != base_ptr_ids_.end()) return pit->second;
  retained_bases_.push_back(use);
  auto kit = base_key_ids_.find(use->rules_key());
  if (kit != base_key_ids_.end()) {
    base_ptr_ids_.emplace(use.get(), kit->second);
    return kit->second;
  }
  int id = static_cast<int>(bases_.size());
  bases_.push_back(use);
  base_ptr_ids_.emplace(use.get(), id);
  base_key_ids_.emplace(use->rules_key(), id);
  return id;
}

int Evaluator::intern_formula(const FormulaRef& f) {
  auto pit = formula_ptr_ids_.find(f.get());
  if (pit != formula_ptr_ids_.end()) return pit->second;
  retained_formulas_.push_back(f);
  std::string key = formula_key(f);
  auto kit = formula_key_ids_.find(key);
  if (kit != formula_key_ids_.end()) {
    formula_ptr_ids_.emplace(f.get(), kit->second);
    return kit->second;
  }
  int id = static_cast<int>(formula_key_ids_.size());
  formula_key_ids_.emplace(std::move(key), id);
  formula_ptr_ids_.emplace(f.get(), id);
  return id;
}

int Evaluator::intern_site(const Site& s) {
  std::string key;
  for (const auto& a : s.atoms) key += iatom_key(a);
  auto it = site_key_ids_.find(key);
  if (it != site_key_ids_.end()) return it->second;
  int id = static_cast<int>(interned_sites_.size());
  interned_sites_.push_back(s);
  site_key_ids_.emplace(std::move(key), id);
  return id;
}

const std::vector<int>& Evaluator::extension_ids(int base) {
  auto it = ext_cache_.find(base);
  if (it != ext_cache_.end()) return it->second;

  const auto& cands = u_.candidates;
  std::size_t k = cands.size();
  if (k > 20) throw ModelError("candidate pool too large to enumerate");
  int cap = cfg_.ext_size_cap < 0 ? static_cast<int>(k) : cfg_.ext_size_cap;
  std::vector<int> out;
  std::set<std::string> seen;
  const BaseRef b = bases_[static_cast<std::size_t>(base)];  // intern_base may reallocate
  for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
    int bits = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (m & (std::size_t{1} << j)) ++bits;
    if (bits > cap) continue;
    std::vector<BaseRule> rules = b->rules();
    std::string suffix;
    for (std::size_t j = 0; j < k; ++j) {
      if (m & (std::size_t{1} << j)) {
        rules.push_back(cands[j]);
        suffix += (suffix.empty() ? "" : ",") + std::to_string(j);
      }
    }
    auto eb = Base::make(suffix.empty() ? b->name() : b->name() + "+cand(" + suffix + ")",
                         std::move(rules));
    if (seen.insert(eb->rules_key()).second) out.push_back(intern_base(eb));
  }
  return ext_cache_.emplace(base, std::move(out)).first->second;
}

std::vector<BaseRef> Evaluator::extensions(const BaseRef& base) {
  std::vector<BaseRef> out;
  for (int id : extension_ids(intern_base(base))) out.push_back(bases_[static_cast<std::size_t>(id)]);
  return out;
}

const std::vector<Term>& Evaluator::terms() {
  if (!terms_ready_) {
    terms_ = closed_terms(u_);
    terms_ready_ = true;
  }
  return terms_;
}

bool Evaluator::site_range_is_truncated() const {
  std::size_t vocab = closed_atoms(u_).size() * 2;
  if (cfg_.site_size_cap >= 0) return static_cast<std::size_t>(cfg_.site_size_cap) < vocab;
  return vocab > static_cast<std::size_t>(cfg_.site_powerset_limit);
}

const std::vector<Site>& Evaluator::site_range() {
  if (site_range_ready_) return site_range_;
  std::vector<InferonicAtom> vocab;
  for (const auto& a : closed_atoms(u_)) {
    vocab.push_back(make_iatom(a, Polarity::Denial));
    vocab.push_back(make_iatom(a, Polarity::Assertion));
  }
  std::sort(vocab.begin(), vocab.end());
  std::size_t n = vocab.size();
  std::size_t cap;
  if (cfg_.site_size_cap >= 0) {
    cap = static_cast<std::size_t>(cfg_.site_size_cap);
  } else {
    cap = n <= static_cast<std::size_t>(cfg_.site_powerset_limit) ? n : 1;
  }
  site_range_.push_back(make_site("{}", {}));
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (!pick.empty()) {
      std::vector<InferonicAtom> atoms;
      for (auto i : pick) atoms.push_back(vocab[i]);
      site_range_.push_back(make_site("", std::move(atoms)));
    }
    if (pick.size() == cap) return;
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      go(i + 1);
      pick.pop_back();
    }
  };
  if (cap > 0) go(0);
  site_range_ready_ = true;
  return site_range_;
}

void Evaluator::build_pool(const Query& q) {
  std::vector<BaseRef> bases = cfg_.quantifier_bases;
  if (bases.empty()) {
    formula_collect_bases(q.consequent, bases);
    for (const auto& t : q.theta) formula_collect_bases(t, bases);
    bool have_query_base = false;
    for (const auto& b : bases)
      if (base_equal(b, q.base)) have_query_base = true;
    if (!have_query_base && q.base) bases.push_back(q.base);
    if (bases.empty()) bases.push_back(Base::empty_base());
  }
  std::string pk;
  for (const auto& b : bases) pk += std::to_string(intern_base(b)) + ",";
  if (pk == pool_key_) return;
  pool_key_ = std::move(pk);
  memo_.clear();  // quantifier verdicts depend on the pool
  pool_.clear();
  pool_ids_.clear();
  for (const auto& a : closed_atoms(u_)) {
    for (const auto& b : bases) {
      pool_.push_back(Formula::inferon(a, b, Polarity::Denial));
      pool_.push_back(Formula::inferon(a, b, Polarity::Assertion));
    }
  }
  for (const auto& f : pool_) pool_ids_.push_back(intern_formula(f));
}

// ---------------------------------------------------------------------------
// Clause evaluation
//
// site == -1 selects the site-free relation; otherwise the contextual one
// with the interned site as the context parameter.

bool Evaluator::at_clause(int base, int site, const FormulaRef& f) {
  BaseRef joined = base_union(bases_[static_cast<std::size_t>(base)], f->base());
  static const Site no_site{"", {}};
  const Site& ctx = site < 0 ? no_site : interned_sites_[static_cast<std::size_t>(site)];
  return dcache_.derives(joined, ctx, make_iatom(f->atom(), f->pol()));
}

bool Evaluator::eval(int base, int site, const FormulaRef& f, int depth) {
  tick();
  int fid = intern_formula(f);
  Key key{base, site, -1, fid};
  auto mit = memo_.find(key);
  if (mit != memo_.end()) return mit->second;

  bool v = false;
  switch (f->kind()) {
    case Formula::Kind::Inferon:
      v = at_clause(base, site, f);
      note(depth, "(At) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    case Formula::Kind::Compound:
      v = eval(base, site, expand_compound(f), depth);
      break;
    case Formula::Kind::And:
      v = eval(base, site, f->lhs(), depth + 1) && eval(base, site, f->rhs(), depth + 1);
      note(depth, "(and) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    case Formula::Kind::Implies: {
      std::vector<int> tid = {intern_formula(f->lhs())};
      v = eval_sequent(base, site, tid, {f->lhs()}, f->rhs(), depth + 1);
      note(depth, "(imp) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    }
    case Formula::Kind::Or: {
      v = true;
      for (int ext : extension_ids(base)) {
        for (std::size_t i = 0; i < pool_.size() && v; ++i) {
          tick();
          const auto& target = pool_[i];
          if (eval_sequent(ext, site, {intern_formula(f->lhs())}, {f->lhs()}, target, depth + 1) &&
              eval_sequent(ext, site, {intern_formula(f->rhs())}, {f->rhs()}, target, depth + 1) &&
              !eval(ext, site, target, depth + 1)) {
            v = false;
            if (witness_.empty())
              witness_ = "extension " + bases_[static_cast<std::size_t>(ext)]->name() +
                         ", inferon " + print(target);
          }
        }
        if (!v) break;
      }
      note(depth, "(or) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    }
    case Formula::Kind::Bottom: {
      v = true;
      for (const auto& target : pool_) {
        tick();
        if (!eval(base, site, target, depth + 1)) {
          v = false;
          if (witness_.empty()) witness_ = "unsupported inferon " + print(target);
          break;
        }
      }
      note(depth, "(bot) = " + std::string(v ? "true" : "false"));
      break;
    }
    case Formula::Kind::ForAll: {
      v = true;
      for (const auto& t : terms()) {
        if (!eval(base, site, formula_substitute(f->body(), f->label(), t), depth + 1)) {
          v = false;
          if (witness_.empty()) witness_ = "instance " + print(t);
          break;
        }
      }
      note(depth, "(all) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    }
    case Formula::Kind::Exists: {
      v = true;
      for (int ext : extension_ids(base)) {
        for (std::size_t i = 0; i < pool_.size() && v; ++i) {
          tick();
          const auto& target = pool_[i];
          bool all_instances = true;
          for (const auto& t : terms()) {
            auto inst = formula_substitute(f->body(), f->label(), t);
            if (!eval_sequent(ext, site, {intern_formula(inst)}, {inst}, target, depth + 1)) {
              all_instances = false;
              break;
            }
          }
          if (all_instances && !eval(ext, site, target, depth + 1)) {
            v = false;
            if (witness_.empty())
              witness_ = "extension " + bases_[static_cast<std::size_t>(ext)]->name() +
                         ", inferon " + print(target);
          }
        }
        if (!v) break;
      }
      note(depth, "(ex) " + print(f) + " = " + (v ? "true" : "false"));
      break;
    }
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: {
      auto ait = u_.agents.find(f->label());
      if (ait == u_.agents.end()) throw ModelError("unresolved agent: " + f->label());
      const auto& catalog = ait->second.bases;
      if (catalog.empty()) throw ModelError("agent " + f->label() + " has an empty base catalog");
      bool is_box = f->kind() == Formula::Kind::Box;
      v = is_box;
      for (const auto& ab : catalog) {
        int joined = intern_base(base_union(bases_[static_cast<std::size_t>(base)], ab));
        bool sub = eval(joined, site, f->body(), depth + 1);
        if (is_box && !sub) {
          v = false;
          if (witness_.empty()) witness_ = "agent base " + ab->name();
          break;
        }
        if (!is_box && sub) {
          v = true;
          break;
        }
      }
      note(depth, (is_box ? "(box) " : "(dia) ") + print(f) + " = " + (v ? "true" : "false"));
      break;
    }
    case Formula::Kind::BodyAtom:
      throw FragmentError("bare atom cannot be evaluated outside a compound inferon");
  }
  memo_.emplace(key, v);
  return v;
}

bool Evaluator::eval_sequent(int base, int site, const std::vector<int>& theta_ids,
                             const std::vector<FormulaRef>& theta, const FormulaRef& f,
                             int depth) {
  tick();
  if (theta.empty()) return eval(base, site, f, depth);

  std::vector<int> sorted_ids = theta_ids;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  auto [tit, fresh] = theta_key_ids_.emplace(std::move(sorted_ids),
                                             static_cast<int>(theta_key_ids_.size()));
  int tid = tit->second;
  int fid = intern_formula(f);
  Key key{base, site, tid, fid};
  auto mit = memo_.find(key);
  if (mit != memo_.end()) return mit->second;

  bool v = true;
  if (site < 0) {
    for (int ext : extension_ids(base)) {
      tick();
      bool all = true;
      for (const auto& t : theta)
        if (!eval(ext, site, t, depth + 1)) {
          all = false;
          break;
        }
      if (all && !eval(ext, site, f, depth + 1)) {
        v = false;
        if (witness_.empty())
          witness_ = "extension " + bases_[static_cast<std::size_t>(ext)]->name();
        break;
      }
    }
  } else {
    // Contextual (Inf): quantify over extensions and sites; antecedents are
    // read at the fresh site, the consequent at the union.
    std::size_t nsites = site_range().size();
    for (std::size_t si = 0; si < nsites && v; ++si) {
      int sprime = intern_site(site_range()[si]);
      long long uk = static_cast<long long>(site) * 1000003LL + sprime;
      auto uit = union_site_cache_.find(uk);
      int joined;
      if (uit != union_site_cache_.end()) {
        joined = uit->second;
      } else {
        joined = intern_site(site_union(interned_sites_[static_cast<std::size_t>(site)],
                                        interned_sites_[static_cast<std::size_t>(sprime)]));
        union_site_cache_.emplace(uk, joined);
      }
      for (int ext : extension_ids(base)) {
        tick();
        bool all = true;
        for (const auto& t : theta)
          if (!eval(ext, sprime, t, depth + 1)) {
            all = false;
            break;
          }
        if (!all) continue;
        if (!eval(ext, joined, f, depth + 1)) {
          v = false;
          if (witness_.empty()) {
            witness_ = "extension " + bases_[static_cast<std::size_t>(ext)]->name() + ", site {";
            for (const auto& a : interned_sites_[static_cast<std::size_t>(sprime)].atoms)
              witness_ += " " + print(a);
            witness_ += " }";
          }
          break;
        }
      }
    }
  }
  note(depth, "(Inf) = " + std::string(v ? "true" : "false"));
  memo_.emplace(key, v);
  return v;
}

Judgment Evaluator::supports(const Query& q) {
  Query q2 = q;
  q2.theta.clear();
  return sequent(q2);
}

Judgment Evaluator::sequent(const Query& q) {
  trace_.clear();
  witness_.clear();
  steps_ = 0;  // the budget guards one query at a time
  build_pool(q);
  if (!q.consequent) throw ModelError("query has no consequent");
  if (!formula_closed(q.consequent)) throw ModelError("consequent is not closed");
  for (const auto& t : q.theta)
    if (!formula_closed(t)) throw ModelError("antecedent is not closed");

  int base = intern_base(q.base);
  int site = -1;
  if (q.site) site = intern_site(*q.site);
  std::vector<int> theta_ids;
  for (const auto& t : q.theta) theta_ids.push_back(intern_formula(t));

  Judgment j;
  j.verdict = eval_sequent(base, site, theta_ids, q.theta, q.consequent, 0);
  j.steps = steps_;
  j.trace = trace_;
  j.witness = j.verdict ? "" : witness_;
  j.site_range_truncated = q.site.has_value() && site_range_is_truncated();
  return j;
}

Judgment Evaluator::validity(const std::vector<FormulaRef>& theta, const FormulaRef& phi) {
  Judgment out;
  out.verdict = true;
  for (const auto& b : extensions(Base::empty_base())) {
    Query q;
    q.universe = &u_;
    q.base = b;
    q.theta = theta;
    q.consequent = phi;
    Judgment j = sequent(q);
    out.steps += j.steps;
    if (!j.verdict) {
      out.verdict = false;
      out.witness = "base " + b->name() + (j.witness.empty() ? "" : "; " + j.witness);
      out.trace = j.trace;
      break;
    }
  }
  return out;
}

}  // namespace inferon
