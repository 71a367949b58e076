#include "inferon/prover.hpp"

#include <algorithm>

#include "inferon/derive.hpp"
#include "inferon/print.hpp"

namespace inferon {

int NJProof::size() const {
  int n = 1;
  for (const auto& s : subs) n += s.size();
  return n;
}

namespace {

using Ctx = std::vector<FormulaRef>;  // kept sorted by formula key, unique

std::string ctx_key(const Ctx& c) {
  std::string k;
  for (const auto& f : c) k += formula_key(f) + ";";
  return k;
}

Ctx ctx_add(const Ctx& c, const FormulaRef& f) {
  Ctx out = c;
  std::string k = formula_key(f);
  for (const auto& g : out)
    if (formula_key(g) == k) return out;
  out.push_back(f);
  std::sort(out.begin(), out.end(),
            [](const FormulaRef& a, const FormulaRef& b) { return formula_key(a) < formula_key(b); });
  return out;
}

bool ctx_has(const Ctx& c, const FormulaRef& f) {
  for (const auto& g : c)
    if (formula_equal(g, f)) return true;
  return false;
}

NJProof leaf(NJProof::Rule r, FormulaRef concl) {
  NJProof p;
  p.rule = r;
  p.concl = std::move(concl);
  return p;
}

NJProof node(NJProof::Rule r, FormulaRef concl, std::vector<NJProof> subs) {
  NJProof p;
  p.rule = r;
  p.concl = std::move(concl);
  p.subs = std::move(subs);
  return p;
}

// Replaces undischarged Ax(target) leaves by `repl`. Branches that rebind
// the same formula as a hypothesis (ImpI antecedent, OrE/ExE minors) keep
// their local Ax.
NJProof subst_leaf(const NJProof& p, const FormulaRef& target, const NJProof& repl) {
  if (p.rule == NJProof::Rule::Ax && formula_equal(p.concl, target)) return repl;
  NJProof out = p;
  out.subs.clear();
  for (std::size_t i = 0; i < p.subs.size(); ++i) {
    bool shadowed = false;
    if (p.rule == NJProof::Rule::ImpI && formula_equal(p.concl->lhs(), target)) shadowed = true;
    if (p.rule == NJProof::Rule::OrE && i >= 1) {
      const auto& major = p.subs[0].concl;
      const auto& hyp = i == 1 ? major->lhs() : major->rhs();
      if (formula_equal(hyp, target)) shadowed = true;
    }
    if (p.rule == NJProof::Rule::ExE && i == 1) {
      const auto& major = p.subs[0].concl;
      auto hyp = formula_substitute(major->body(), major->label(), Term::variable(p.eigen));
      if (formula_equal(hyp, target)) shadowed = true;
    }
    out.subs.push_back(shadowed ? p.subs[i] : subst_leaf(p.subs[i], target, repl));
  }
  return out;
}

class Search {
 public:
  Search(const Universe& u, EvalConfig cfg) : u_(u), eval_(u, cfg) {}

  ProveResult run(const Ctx& gamma, const FormulaRef& goal, int max_depth) {
    Ctx c;
    for (const auto& f : gamma) c = ctx_add(c, f);
    for (int d = 1; d <= max_depth; ++d) {
      cutoff_ = false;
      fail_.clear();
      auto p = search(c, goal, d);
      if (p) return ProveResult{ProveStatus::Proved, std::move(p)};
      if (!cutoff_) return ProveResult{ProveStatus::NoProof, std::nullopt};
    }
    return ProveResult{ProveStatus::DepthExceeded, std::nullopt};
  }

  // Bounded (Inferon) side condition; certificate lines record the
  // extensions inspected.
  bool inferon_leaf_holds(const Ctx& gamma, const FormulaRef& inferon,
                          std::vector<std::string>* cert) {
    std::string key = ctx_key(gamma) + "!" + formula_key(inferon);
    auto it = leaf_memo_.find(key);
    if (it != leaf_memo_.end() && !cert) return it->second;
    bool ok = true;
    for (const auto& ext : eval_.extensions(inferon->base())) {
      bool all = true;
      for (const auto& g : gamma) {
        Query q;
        q.universe = &u_;
        q.base = ext;
        q.consequent = g;
        if (!eval_.supports(q).verdict) {
          all = false;
          break;
        }
      }
      if (!all) {
        if (cert) cert->push_back("ext " + ext->name() + ": antecedents fail, skipped");
        continue;
      }
      Site empty{"", {}};
      bool der = eval_.derive_cache().derives(ext, empty,
                                              make_iatom(inferon->atom(), inferon->pol()));
      if (cert)
        cert->push_back("ext " + ext->name() + ": antecedents hold, derivable=" +
                        (der ? "yes" : "no"));
      if (!der) {
        ok = false;
        break;
      }
    }
    leaf_memo_[key] = ok;
    return ok;
  }

 private:
  const Universe& u_;
  Evaluator eval_;
  bool cutoff_ = false;
  std::map<std::string, int> fail_;  // (ctx, goal) -> depth that failed
  std::map<std::string, bool> leaf_memo_;

  std::vector<Term> term_pool(const Ctx& gamma, const FormulaRef& goal) {
    std::vector<Term> pool = closed_terms(u_);
    std::set<std::string> vars;
    for (const auto& g : gamma) formula_free_vars(g, vars);
    formula_free_vars(goal, vars);
    for (const auto& v : vars) pool.push_back(Term::variable(v));
    return pool;
  }

  std::optional<NJProof> search(const Ctx& gamma, const FormulaRef& goal, int depth) {
    if (ctx_has(gamma, goal)) return leaf(NJProof::Rule::Ax, goal);
    if (depth <= 0) {
      cutoff_ = true;
      return std::nullopt;
    }
    std::string key = ctx_key(gamma) + "|-" + formula_key(goal);
    auto it = fail_.find(key);
    if (it != fail_.end() && it->second >= depth) return std::nullopt;

    auto found = try_rules(gamma, goal, depth);
    if (!found) fail_[key] = depth;
    return found;
  }

  std::optional<NJProof> try_rules(const Ctx& gamma, const FormulaRef& goal, int depth) {
    // Inferon leaves close immediately when the side condition holds.
    if (goal->kind() == Formula::Kind::Inferon && formula_closed(goal)) {
      std::vector<std::string> cert;
      if (inferon_leaf_holds(gamma, goal, &cert)) {
        NJProof p = leaf(NJProof::Rule::InferonLeaf, goal);
        p.certificate = std::move(cert);
        return p;
      }
    }

    switch (goal->kind()) {
      case Formula::Kind::Implies: {
        auto sub = search(ctx_add(gamma, goal->lhs()), goal->rhs(), depth - 1);
        if (sub) return node(NJProof::Rule::ImpI, goal, {std::move(*sub)});
        break;
      }
      case Formula::Kind::And: {
        auto l = search(gamma, goal->lhs(), depth - 1);
        if (l) {
          auto r = search(gamma, goal->rhs(), depth - 1);
          if (r) return node(NJProof::Rule::AndI, goal, {std::move(*l), std::move(*r)});
        }
        break;
      }
      case Formula::Kind::Or: {
        auto l = search(gamma, goal->lhs(), depth - 1);
        if (l) return node(NJProof::Rule::OrI1, goal, {std::move(*l)});
        auto r = search(gamma, goal->rhs(), depth - 1);
        if (r) return node(NJProof::Rule::OrI2, goal, {std::move(*r)});
        break;
      }
      case Formula::Kind::ForAll: {
        std::string v = fresh_var(gamma, goal);
        auto sub = search(gamma, formula_substitute(goal->body(), goal->label(), Term::variable(v)),
                          depth - 1);
        if (sub) {
          NJProof p = node(NJProof::Rule::AllI, goal, {std::move(*sub)});
          p.eigen = v;
          return p;
        }
        break;
      }
      case Formula::Kind::Exists: {
        for (const auto& t : term_pool(gamma, goal)) {
          auto sub = search(gamma, formula_substitute(goal->body(), goal->label(), t), depth - 1);
          if (sub) {
            NJProof p = node(NJProof::Rule::ExI, goal, {std::move(*sub)});
            p.term = t;
            return p;
          }
        }
        break;
      }
      case Formula::Kind::Compound:
        return search(gamma, expand_compound(goal), depth - 1);
      default: break;
    }

    // Eliminations driven by the context.
    for (const auto& phi : gamma) {
      switch (phi->kind()) {
        case Formula::Kind::Bottom:
          if (goal->kind() != Formula::Kind::Bottom)
            return node(NJProof::Rule::BotE, goal, {leaf(NJProof::Rule::Ax, phi)});
          break;
        case Formula::Kind::And: {
          if (ctx_has(gamma, phi->lhs()) && ctx_has(gamma, phi->rhs())) break;
          Ctx g2 = ctx_add(ctx_add(gamma, phi->lhs()), phi->rhs());
          auto sub = search(g2, goal, depth - 1);
          if (sub) {
            NJProof with_l = subst_leaf(
                *sub, phi->lhs(),
                node(NJProof::Rule::AndE1, phi->lhs(), {leaf(NJProof::Rule::Ax, phi)}));
            NJProof with_both = subst_leaf(
                with_l, phi->rhs(),
                node(NJProof::Rule::AndE2, phi->rhs(), {leaf(NJProof::Rule::Ax, phi)}));
            return with_both;
          }
          break;
        }
        case Formula::Kind::Implies: {
          if (ctx_has(gamma, phi->rhs())) break;
          auto arg = search(gamma, phi->lhs(), depth - 1);
          if (!arg) break;
          auto rest = search(ctx_add(gamma, phi->rhs()), goal, depth - 1);
          if (rest) {
            NJProof use = node(NJProof::Rule::ImpE, phi->rhs(),
                               {std::move(*arg), leaf(NJProof::Rule::Ax, phi)});
            return subst_leaf(*rest, phi->rhs(), use);
          }
          break;
        }
        case Formula::Kind::Or: {
          if (ctx_has(gamma, phi->lhs()) || ctx_has(gamma, phi->rhs())) break;
          auto l = search(ctx_add(gamma, phi->lhs()), goal, depth - 1);
          if (!l) break;
          auto r = search(ctx_add(gamma, phi->rhs()), goal, depth - 1);
          if (r)
            return node(NJProof::Rule::OrE, goal,
                        {leaf(NJProof::Rule::Ax, phi), std::move(*l), std::move(*r)});
          break;
        }
        case Formula::Kind::Exists: {
          std::string v = "_e" + std::to_string(std::hash<std::string>{}(formula_key(phi)) % 9973);
          auto inst = formula_substitute(phi->body(), phi->label(), Term::variable(v));
          if (ctx_has(gamma, inst)) break;
          auto sub = search(ctx_add(gamma, inst), goal, depth - 1);
          if (sub) {
            NJProof p = node(NJProof::Rule::ExE, goal,
                             {leaf(NJProof::Rule::Ax, phi), std::move(*sub)});
            p.eigen = v;
            return p;
          }
          break;
        }
        case Formula::Kind::ForAll: {
          for (const auto& t : term_pool(gamma, goal)) {
            auto inst = formula_substitute(phi->body(), phi->label(), t);
            if (ctx_has(gamma, inst)) continue;
            auto sub = search(ctx_add(gamma, inst), goal, depth - 1);
            if (sub) {
              NJProof use = node(NJProof::Rule::AllE, inst, {leaf(NJProof::Rule::Ax, phi)});
              use.term = t;
              return subst_leaf(*sub, inst, use);
            }
          }
          break;
        }
        default: break;
      }
    }
    return std::nullopt;
  }

  std::string fresh_var(const Ctx& gamma, const FormulaRef& goal) {
    std::set<std::string> used;
    for (const auto& g : gamma) formula_free_vars(g, used);
    formula_free_vars(goal, used);
    for (int i = 0;; ++i) {
      std::string v = "_v" + std::to_string(i);
      if (!used.count(v)) return v;
    }
  }
};

}  // namespace

ProveResult nj_prove(const Universe& u, const std::vector<FormulaRef>& gamma,
                     const FormulaRef& goal, int max_depth, EvalConfig cfg) {
  Search s(u, cfg);
  Ctx c(gamma.begin(), gamma.end());
  return s.run(c, goal, max_depth);
}

// ---------------------------------------------------------------------------
// Replay

namespace {

bool replay_rec(Search& leaves, const Ctx& gamma, const NJProof& p) {
  switch (p.rule) {
    case NJProof::Rule::Ax: return ctx_has(gamma, p.concl);
    case NJProof::Rule::InferonLeaf:
      return p.concl->kind() == Formula::Kind::Inferon && formula_closed(p.concl) &&
             leaves.inferon_leaf_holds(gamma, p.concl, nullptr);
    case NJProof::Rule::BotE:
      return p.subs.size() == 1 && p.subs[0].concl->kind() == Formula::Kind::Bottom &&
             replay_rec(leaves, gamma, p.subs[0]);
    case NJProof::Rule::AndI:
      return p.concl->kind() == Formula::Kind::And && p.subs.size() == 2 &&
             formula_equal(p.subs[0].concl, p.concl->lhs()) &&
             formula_equal(p.subs[1].concl, p.concl->rhs()) &&
             replay_rec(leaves, gamma, p.subs[0]) && replay_rec(leaves, gamma, p.subs[1]);
    case NJProof::Rule::AndE1:
      return p.subs.size() == 1 && p.subs[0].concl->kind() == Formula::Kind::And &&
             formula_equal(p.subs[0].concl->lhs(), p.concl) && replay_rec(leaves, gamma, p.subs[0]);
    case NJProof::Rule::AndE2:
      return p.subs.size() == 1 && p.subs[0].concl->kind() == Formula::Kind::And &&
             formula_equal(p.subs[0].concl->rhs(), p.concl) && replay_rec(leaves, gamma, p.subs[0]);
    case NJProof::Rule::OrI1:
      return p.concl->kind() == Formula::Kind::Or && p.subs.size() == 1 &&
             formula_equal(p.subs[0].concl, p.concl->lhs()) && replay_rec(leaves, gamma, p.subs[0]);
    case NJProof::Rule::OrI2:
      return p.concl->kind() == Formula::Kind::Or && p.subs.size() == 1 &&
             formula_equal(p.subs[0].concl, p.concl->rhs()) && replay_rec(leaves, gamma, p.subs[0]);
    case NJProof::Rule::OrE: {
      if (p.subs.size() != 3 || p.subs[0].concl->kind() != Formula::Kind::Or) return false;
      const auto& major = p.subs[0].concl;
      return formula_equal(p.subs[1].concl, p.concl) && formula_equal(p.subs[2].concl, p.concl) &&
             replay_rec(leaves, gamma, p.subs[0]) &&
             replay_rec(leaves, ctx_add(gamma, major->lhs()), p.subs[1]) &&
             replay_rec(leaves, ctx_add(gamma, major->rhs()), p.subs[2]);
    }
    case NJProof::Rule::ImpI:
      return p.concl->kind() == Formula::Kind::Implies && p.subs.size() == 1 &&
             formula_equal(p.subs[0].concl, p.concl->rhs()) &&
             replay_rec(leaves, ctx_add(gamma, p.concl->lhs()), p.subs[0]);
    case NJProof::Rule::ImpE: {
      if (p.subs.size() != 2 || p.subs[1].concl->kind() != Formula::Kind::Implies) return false;
      const auto& imp = p.subs[1].concl;
      return formula_equal(imp->lhs(), p.subs[0].concl) && formula_equal(imp->rhs(), p.concl) &&
             replay_rec(leaves, gamma, p.subs[0]) && replay_rec(leaves, gamma, p.subs[1]);
    }
    case NJProof::Rule::AllI: {
      if (p.concl->kind() != Formula::Kind::ForAll || p.subs.size() != 1) return false;
      std::set<std::string> free;
      for (const auto& g : gamma) formula_free_vars(g, free);
      if (free.count(p.eigen)) return false;  // eigenvariable condition
      auto expect =
          formula_substitute(p.concl->body(), p.concl->label(), Term::variable(p.eigen));
      return formula_equal(p.subs[0].concl, expect) && replay_rec(leaves, gamma, p.subs[0]);
    }
    case NJProof::Rule::AllE: {
      if (p.subs.size() != 1 || p.subs[0].concl->kind() != Formula::Kind::ForAll) return false;
      const auto& major = p.subs[0].concl;
      auto expect = formula_substitute(major->body(), major->label(), p.term);
      return formula_equal(expect, p.concl) && replay_rec(leaves, gamma, p.subs[0]);
    }
    case NJProof::Rule::ExI: {
      if (p.concl->kind() != Formula::Kind::Exists || p.subs.size() != 1) return false;
      auto expect = formula_substitute(p.concl->body(), p.concl->label(), p.term);
      return formula_equal(p.subs[0].concl, expect) && replay_rec(leaves, gamma, p.subs[0]);
    }
    case NJProof::Rule::ExE: {
      if (p.subs.size() != 2 || p.subs[0].concl->kind() != Formula::Kind::Exists) return false;
      const auto& major = p.subs[0].concl;
      std::set<std::string> free;
      for (const auto& g : gamma) formula_free_vars(g, free);
      formula_free_vars(p.concl, free);
      if (free.count(p.eigen)) return false;
      auto hyp = formula_substitute(major->body(), major->label(), Term::variable(p.eigen));
      return formula_equal(p.subs[1].concl, p.concl) && replay_rec(leaves, gamma, p.subs[0]) &&
             replay_rec(leaves, ctx_add(gamma, hyp), p.subs[1]);
    }
  }
  return false;
}

}  // namespace

bool nj_replay(const Universe& u, const std::vector<FormulaRef>& gamma, const NJProof& proof,
               EvalConfig cfg) {
  Search s(u, cfg);
  Ctx c;
  for (const auto& f : gamma) c = ctx_add(c, f);
  return replay_rec(s, c, proof);
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

void subformula_closure(const FormulaRef& f, std::vector<FormulaRef>& out) {
  for (const auto& g : out)
    if (formula_equal(g, f)) return;
  out.push_back(f);
  switch (f->kind()) {
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      subformula_closure(f->lhs(), out);
      subformula_closure(f->rhs(), out);
      break;
    case Formula::Kind::Inferon:
    case Formula::Kind::Bottom: break;
    default: throw FragmentError("flattening is defined on the propositional fragment");
  }
}

}  // namespace

const FormulaRef& FlatMap::flat_of(const FormulaRef& f) const {
  auto it = flat.find(formula_key(f));
  if (it == flat.end()) throw ModelError("formula outside the flattening domain");
  return it->second;
}

const InferonicAtom& FlatMap::flat_minus_of(const FormulaRef& f) const {
  auto it = flat_minus.find(formula_key(f));
  if (it == flat_minus.end()) throw ModelError("formula outside the flattening domain");
  return it->second;
}

FormulaRef FlatMap::natural_of(const FormulaRef& image) const {
  auto it = inv_flat.find(formula_key(image));
  if (it == inv_flat.end()) throw ModelError("value outside the flattening image");
  return it->second;
}

FormulaRef FlatMap::natural_minus_of(const InferonicAtom& image) const {
  auto it = inv_flat_minus.find(iatom_key(image));
  if (it == inv_flat_minus.end()) throw ModelError("value outside the flattening image");
  return it->second;
}

FlatMap flatten(const std::vector<FormulaRef>& gamma, const FormulaRef& phi) {
  FlatMap fm;
  std::vector<FormulaRef> closure;
  for (const auto& g : gamma) subformula_closure(expand_compound(g), closure);
  subformula_closure(expand_compound(phi), closure);
  std::sort(closure.begin(), closure.end(), [](const FormulaRef& a, const FormulaRef& b) {
    return formula_key(a) < formula_key(b);
  });
  fm.domain = closure;

  fm.bottom_marker = make_iatom(Atom{"_bot", {}}, Polarity::Assertion);
  fm.fresh_preds.push_back(PredSig{"_bot", 0});

  int fresh = 0;
  for (const auto& f : closure) {
    std::string k = formula_key(f);
    switch (f->kind()) {
      case Formula::Kind::Inferon: {
        fm.flat.emplace(k, f);
        fm.flat_minus.emplace(k,
                              make_extended_iatom(f->atom(), f->pol(), f->base()));
        break;
      }
      case Formula::Kind::Bottom: {
        fm.flat.emplace(k, Formula::bottom());
        fm.flat_minus.emplace(k, fm.bottom_marker);
        break;
      }
      default: {
        std::string name = "_f" + std::to_string(fresh++);
        fm.fresh_preds.push_back(PredSig{name, 0});
        Atom a{name, {}};
        fm.flat.emplace(k, Formula::inferon(a, Base::empty_base(), Polarity::Assertion));
        fm.flat_minus.emplace(k, make_iatom(a, Polarity::Assertion));
        break;
      }
    }
    fm.inv_flat.emplace(formula_key(fm.flat.at(k)), f);
    fm.inv_flat_minus.emplace(iatom_key(fm.flat_minus.at(k)), f);
  }
  return fm;
}

BaseRef build_base_n(const FlatMap& fm, const Universe& u) {
  std::vector<BaseRule> rules;
  auto fmin = [&](const FormulaRef& f) { return fm.flat_minus_of(f); };

  std::vector<InferonicAtom> vocab;
  for (const auto& a : closed_atoms(u)) {
    vocab.push_back(make_iatom(a, Polarity::Denial));
    vocab.push_back(make_iatom(a, Polarity::Assertion));
  }
  for (const auto& f : fm.domain) vocab.push_back(fmin(f));
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  bool domain_has_bottom = false;
  for (const auto& f : fm.domain) {
    switch (f->kind()) {
      case Formula::Kind::Implies:
        rules.push_back(make_rule({RulePremise{{fmin(f->lhs())}, fmin(f->rhs())}}, fmin(f)));  // 1
        rules.push_back(make_rule({RulePremise{{}, fmin(f)}, RulePremise{{}, fmin(f->lhs())}},
                                  fmin(f->rhs())));  // 2
        break;
      case Formula::Kind::And:
        rules.push_back(make_rule(
            {RulePremise{{}, fmin(f->lhs())}, RulePremise{{}, fmin(f->rhs())}}, fmin(f)));  // 3
        rules.push_back(make_rule({RulePremise{{}, fmin(f)}}, fmin(f->lhs())));             // 4
        rules.push_back(make_rule({RulePremise{{}, fmin(f)}}, fmin(f->rhs())));             // 5
        break;
      case Formula::Kind::Or:
        rules.push_back(make_rule({RulePremise{{}, fmin(f->lhs())}}, fmin(f)));  // 6
        rules.push_back(make_rule({RulePremise{{}, fmin(f->rhs())}}, fmin(f)));  // 7
        for (const auto& a : vocab) {
          rules.push_back(make_rule({RulePremise{{}, fmin(f)},
                                     RulePremise{{fmin(f->lhs())}, a},
                                     RulePremise{{fmin(f->rhs())}, a}},
                                    a));  // 8
        }
        break;
      case Formula::Kind::Bottom: domain_has_bottom = true; break;
      default: break;
    }
  }
  // 9: ex falso over the vocabulary, available whether or not bottom occurs.
  (void)domain_has_bottom;
  for (const auto& a : vocab) {
    if (a == fm.bottom_marker) continue;
    rules.push_back(make_rule({RulePremise{{}, fm.bottom_marker}}, a));
  }
  return Base::make("N", std::move(rules));
}

Comp3Report check_comp3(const Universe& u, const std::vector<FormulaRef>& gamma,
                        const FormulaRef& phi, const BaseRef& base, EvalConfig cfg) {
  Comp3Report r;
  FlatMap fm = flatten(gamma, phi);

  // Left: flattened derivability with the flattened antecedents as context.
  std::vector<InferonicAtom> ctx;
  for (const auto& g : gamma) ctx.push_back(fm.flat_minus_of(g));
  Site site = make_site("", std::move(ctx));
  bool left = derives(*base, site, fm.flat_minus_of(phi));

  // Right: flattened support over the universe extended with the flattening
  // vocabulary.
  Universe u2 = u;
  for (const auto& p : fm.fresh_preds) {
    bool have = false;
    for (const auto& q : u2.preds)
      if (q.name == p.name) have = true;
    if (!have) u2.preds.push_back(p);
  }
  Evaluator ev(u2, cfg);
  Query q;
  q.universe = &u2;
  q.base = base;
  for (const auto& g : gamma) q.theta.push_back(fm.flat_of(g));
  q.consequent = fm.flat_of(phi);
  bool right = ev.sequent(q).verdict;

  r.left = left;
  r.right = right;
  r.agree = left == right;
  if (!r.agree) {
    // The usual culprit: the candidate pool cannot realize the context.
    bool have_all = true;
    for (const auto& g : gamma) {
      BaseRule ax = make_axiom(fm.flat_minus_of(g));
      bool found = false;
      for (const auto& c : u.candidates)
        if (c == ax) found = true;
      if (!found) have_all = false;
    }
    r.diagnostic = have_all
                       ? "flattened derivability and support disagree"
                       : "universe insufficiency: candidate pool lacks axioms for the flattened "
                         "antecedents";
  }
  return r;
}

}  // namespace inferon
