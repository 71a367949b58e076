#include "inferon/flow.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "inferon/print.hpp"

namespace inferon {

std::optional<Term> PreInferomorphism::down_of(const Term& t) const {
  auto it = down.find(t);
  if (it == down.end()) return std::nullopt;
  return it->second;
}

std::string PreInferomorphism::up_of(int arity, const std::string& pred) const {
  auto it = up.find(arity);
  if (it == up.end()) return pred;
  auto jt = it->second.find(pred);
  return jt == it->second.end() ? pred : jt->second;
}

std::vector<Term> PreInferomorphism::down_domain() const {
  std::vector<Term> out;
  for (const auto& [k, v] : down) out.push_back(k);
  return out;
}

namespace {

enum class Dir { Up, Down };

std::optional<FormulaRef> apply_dir(const PreInferomorphism& f, const FormulaRef& phi, Dir dir) {
  if (formula_has_modality(phi)) throw FragmentError("morphism images are modality-free");
  switch (phi->kind()) {
    case Formula::Kind::Compound: return apply_dir(f, expand_compound(phi), dir);
    case Formula::Kind::Bottom: return phi;
    case Formula::Kind::Inferon: {
      if (!base_equal(phi->base(), f.source)) return phi;  // other bases are untouched
      if (dir == Dir::Up) {
        Atom a{f.up_of(phi->atom().arity(), phi->atom().pred), phi->atom().args};
        return Formula::inferon(std::move(a), f.target, phi->pol());
      }
      Atom a{phi->atom().pred, {}};
      for (const auto& t : phi->atom().args) {
        auto mapped = f.down_of(t);
        if (!mapped) return std::nullopt;
        a.args.push_back(*mapped);
      }
      return Formula::inferon(std::move(a), phi->base(), phi->pol());
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      auto l = apply_dir(f, phi->lhs(), dir);
      auto r = apply_dir(f, phi->rhs(), dir);
      if (!l || !r) return std::nullopt;
      if (phi->kind() == Formula::Kind::And) return Formula::conj(*l, *r);
      if (phi->kind() == Formula::Kind::Or) return Formula::disj(*l, *r);
      return Formula::implies(*l, *r);
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      auto b = apply_dir(f, phi->body(), dir);
      if (!b) return std::nullopt;
      return phi->kind() == Formula::Kind::ForAll ? Formula::forall(phi->label(), *b)
                                                  : Formula::exists(phi->label(), *b);
    }
    default: throw FragmentError("morphism image undefined for this formula");
  }
}

}  // namespace

FormulaRef apply_up(const PreInferomorphism& f, const FormulaRef& phi) {
  return *apply_dir(f, phi, Dir::Up);  // up is total
}

std::optional<FormulaRef> apply_down(const PreInferomorphism& f, const FormulaRef& phi) {
  return apply_dir(f, phi, Dir::Down);
}

PreInferomorphism compose(const PreInferomorphism& g, const PreInferomorphism& f) {
  if (!base_equal(f.target, g.source))
    throw ModelError("morphisms do not compose: target/source mismatch");
  PreInferomorphism h;
  h.name = g.name + "." + f.name;
  h.source = f.source;
  h.target = g.target;
  h.ambient = f.ambient;
  for (const auto& [t, mid] : g.down) {
    auto out = f.down_of(mid);
    if (out) h.down.emplace(t, *out);
  }
  // Arity-indexed predicate maps chain pointwise; identity fills the gaps.
  std::set<int> arities;
  for (const auto& [n, m] : f.up) arities.insert(n);
  for (const auto& [n, m] : g.up) arities.insert(n);
  for (int n : arities) {
    std::set<std::string> domain;
    auto fit = f.up.find(n);
    auto git = g.up.find(n);
    if (fit != f.up.end())
      for (const auto& [from, to] : fit->second) domain.insert(from);
    if (git != g.up.end())
      for (const auto& [from, to] : git->second) domain.insert(from);
    for (const auto& r : domain) h.up[n][r] = g.up_of(n, f.up_of(n, r));
  }
  return h;
}

PreInferomorphism identity_morphism(const BaseRef& base, const BaseRef& ambient,
                                    const Universe& u) {
  PreInferomorphism f;
  f.name = "id";
  f.source = base;
  f.target = base;
  f.ambient = ambient;
  for (const auto& t : closed_terms(u)) f.down.emplace(t, t);
  for (const auto& p : u.preds) f.up[p.arity][p.name] = p.name;
  return f;
}

// ---------------------------------------------------------------------------
// Chu condition

namespace {

std::vector<std::vector<Term>> tuples_over(const std::vector<Term>& pool, int n) {
  std::vector<std::vector<Term>> out = {{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Term>> grown;
    for (const auto& t : out)
      for (const auto& x : pool) {
        auto t2 = t;
        t2.push_back(x);
        grown.push_back(std::move(t2));
      }
    out = std::move(grown);
  }
  return out;
}

}  // namespace

ChuReport check_chu(const PreInferomorphism& f, const Universe& u, const EvalConfig& cfg,
                    bool parallel) {
  Evaluator ev(u, cfg);
  auto exts = ev.extensions(f.ambient ? f.ambient : Base::empty_base());
  auto dom = f.down_domain();

  struct Slot {
    bool bad = false;
    long long checked = 0;
    ChuCounterexample ce;
  };
  std::vector<Slot> slots(exts.size());

  // The condition is checked for the predicates the morphism declares in its
  // up map: those are the source stock's vocabulary. Symbols it never
  // translates carry no constraint between the two bases.
  std::vector<PredSig> preds;
  for (const auto& p : u.preds) {
    auto it = f.up.find(p.arity);
    if (it != f.up.end() && it->second.count(p.name)) preds.push_back(p);
  }

  auto run_one = [&](std::size_t i) {
    DeriveCache cache;
    Slot& s = slots[i];
    const auto& ext = exts[i];
    Site empty{"", {}};
    for (const auto& p : preds) {
      if (s.bad) return;
      for (const auto& tup : tuples_over(dom, p.arity)) {
        for (Polarity b : {Polarity::Denial, Polarity::Assertion}) {
          ++s.checked;
          Atom lhs_atom{p.name, {}};
          bool defined = true;
          for (const auto& t : tup) {
            auto m = f.down_of(t);
            if (!m) {
              defined = false;
              break;
            }
            lhs_atom.args.push_back(*m);
          }
          if (!defined) continue;
          Atom rhs_atom{f.up_of(p.arity, p.name), tup};
          bool lhs = cache.derives(base_union(ext, f.source), empty, make_iatom(lhs_atom, b));
          bool rhs = cache.derives(base_union(ext, f.target), empty, make_iatom(rhs_atom, b));
          if (lhs != rhs) {
            s.bad = true;
            s.ce = ChuCounterexample{ext->name(), p.name, tup, b, lhs, rhs};
            return;
          }
        }
      }
    }
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(exts.size()); ++i) run_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < exts.size(); ++i) run_one(i);
  }

  ChuReport r;
  r.ok = true;
  for (const auto& s : slots) {
    r.checked += s.checked;
    if (!r.counterexample && s.bad) {
      r.ok = false;
      r.counterexample = s.ce;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Quasi-inferomorphisms

QuasiReport is_quasi(const PreInferomorphism& f, const Universe& u, bool restrict_to_reachable,
                     const std::vector<FormulaRef>& reachable) {
  QuasiReport r;
  r.restricted = restrict_to_reachable;

  auto in_reachable = [&](const FormulaRef& i) {
    if (!restrict_to_reachable) return true;
    for (const auto& x : reachable)
      if (formula_equal(x, i)) return true;
    return false;
  };

  // Down image must cover the source-based closed inferons: each argument
  // tuple must come from the down table's range.
  std::set<std::string> down_range;
  for (const auto& [k, v] : f.down) down_range.insert(term_key(v));

  for (const auto& a : closed_atoms(u)) {
    for (Polarity b : {Polarity::Denial, Polarity::Assertion}) {
      auto target_down = Formula::inferon(a, f.source, b);
      if (in_reachable(target_down)) {
        for (const auto& t : a.args) {
          if (!down_range.count(term_key(t))) {
            r.ok = false;
            r.missing = "down image misses " + print(target_down);
            return r;
          }
        }
      }
      // Up image must cover the target-based closed inferons: the predicate
      // must be in the range of f_up at its arity.
      auto target_up = Formula::inferon(a, f.target, b);
      if (in_reachable(target_up)) {
        bool hit = false;
        auto it = f.up.find(a.arity());
        std::set<std::string> remapped;
        if (it != f.up.end()) {
          for (const auto& [from, to] : it->second) {
            if (to == a.pred) hit = true;
            remapped.insert(from);
          }
        }
        // Identity covers symbols without an explicit entry.
        if (!hit && !remapped.count(a.pred)) hit = true;
        if (!hit) {
          r.ok = false;
          r.missing = "up image misses " + print(target_up);
          return r;
        }
      }
    }
  }
  r.ok = true;
  return r;
}

// ---------------------------------------------------------------------------
// Channels over stocks

std::optional<Term> connected(const StockChannel& ch, const std::string& leg_i, const Term& ti,
                              const std::string& leg_j, const Term& tj) {
  auto fi = ch.legs.find(leg_i);
  auto fj = ch.legs.find(leg_j);
  if (fi == ch.legs.end() || fj == ch.legs.end()) throw ModelError("unknown channel leg");
  std::vector<Term> core = ch.core.terms;
  std::sort(core.begin(), core.end());
  for (const auto& t : core) {
    auto a = fi->second.down_of(t);
    auto b = fj->second.down_of(t);
    if (a && b && *a == ti && *b == tj) return t;
  }
  return std::nullopt;
}

CarriesReport carries(const StockChannel& ch, const std::string& leg_f, const Term& t,
                      const std::string& leg_g, const Term& t_prime, const std::string& pred_r,
                      const std::string& pred_s, Polarity pol, Evaluator& eval) {
  CarriesReport r;
  auto uf = ch.legs.find(leg_f);
  auto ug = ch.legs.find(leg_g);
  if (uf == ch.legs.end() || ug == ch.legs.end()) throw ModelError("unknown channel leg");
  auto witness = connected(ch, leg_f, t, leg_g, t_prime);
  r.connected = witness.has_value();
  if (!r.connected) {
    r.detail = "tokens are not connected in the channel";
    return r;
  }
  BaseRef ambient = uf->second.ambient ? uf->second.ambient : Base::empty_base();
  for (const auto& tc : ch.core.terms) {
    Atom lhs{uf->second.up_of(1, pred_r), {tc}};
    Atom rhs{ug->second.up_of(1, pred_s), {tc}};
    Query q;
    q.universe = &eval.universe();
    q.base = ambient;
    q.theta = {Formula::inferon(lhs, ch.core.base, pol)};
    q.consequent = Formula::inferon(rhs, ch.core.base, pol);
    Judgment j = eval.sequent(q);
    if (!j.verdict) {
      r.detail = "core sequent fails at " + print(tc) +
                 (j.witness.empty() ? "" : " (" + j.witness + ")");
      return r;
    }
  }
  r.ok = true;
  return r;
}

// ---------------------------------------------------------------------------
// Sites as channels

BaseRef base_of(const Site& s) {
  std::vector<BaseRule> rules;
  for (const auto& a : s.atoms) rules.push_back(make_axiom(a));
  std::string name = s.name.empty() ? "site" : "of(" + s.name + ")";
  return Base::make(std::move(name), std::move(rules));
}

SiteChannel make_site_channel(const Site& source, const Site& target) {
  if (!site_subset(source, target))
    throw ModelError("site channel requires source within target");
  return SiteChannel{source, target, site_difference(target, source)};
}

SiteChannel compose(const SiteChannel& c1, const SiteChannel& c2) {
  if (!site_equal(c1.target, c2.source)) throw ModelError("site channels do not compose");
  SiteChannel out;
  out.source = c1.source;
  out.target = c2.target;
  out.label = site_union(c1.label, c2.label);
  return out;
}

}  // namespace inferon
