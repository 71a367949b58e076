#include "inferon/derive.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace inferon {

namespace {

// Joint saturation over the family of bases reachable from the queried base
// through extended-atom annotations. Judgments are (mask, context, atom)
// where mask selects which annotation bases have been unioned in. Every
// addition is stamped with a global sequence number so a derivation tree can
// be extracted deterministically afterwards (lowest-rule-index first, and a
// justification only ever points at strictly earlier judgments).
class Engine {
 public:
  Engine(const Base& base, const Site& context) {
    collect_annotations(base);
    for (const auto& a : context.atoms) note_ext(a);
    build_masks(base);
    for (const auto& a : context.atoms) intern(a);
    intern_rule_atoms();
    resolve_ext_links();
    root_ctx_ = intern_ctx(ids_of(context.atoms));
    close_contexts();
    saturate();
  }

  bool derivable(const InferonicAtom& goal) const {
    auto it = atom_ids_.find(iatom_key(goal));
    if (it == atom_ids_.end()) return false;
    return seq_at(0, root_ctx_, it->second) > 0;
  }

  std::optional<DerivationTree> extract(const InferonicAtom& goal) const {
    auto it = atom_ids_.find(iatom_key(goal));
    if (it == atom_ids_.end()) return std::nullopt;
    if (seq_at(0, root_ctx_, it->second) == 0) return std::nullopt;
    return extract_at(0, root_ctx_, it->second);
  }

 private:
  std::vector<InferonicAtom> atoms_;
  std::map<std::string, int> atom_ids_;
  std::vector<int> ext_ann_;    // annotation index, -1 for plain atoms
  std::vector<int> ext_plain_;  // id of the plain counterpart

  std::vector<BaseRef> anns_;
  std::vector<std::vector<const BaseRule*>> mask_rules_;

  std::vector<std::vector<int>> ctxs_;
  std::map<std::vector<int>, int> ctx_ids_;
  int root_ctx_ = 0;

  std::vector<std::vector<int>> hyp_sets_;  // distinct premise hypothesis sets (as id lists)

  // (mask, ctx, atom) -> sequence number; 0 = underived
  std::vector<int> seq_;
  int next_seq_ = 1;

  std::size_t n_masks() const { return mask_rules_.size(); }

  int idx(std::size_t m, int c, int a) const {
    return static_cast<int>((m * ctxs_.size() + static_cast<std::size_t>(c)) * atoms_.size()) + a;
  }
  int seq_at(std::size_t m, int c, int a) const { return seq_[idx(m, c, a)]; }

  void note_ext(const InferonicAtom& a) {
    if (!a.ext) return;
    for (const auto& b : anns_)
      if (b->same_rules(*a.ext)) return;
    anns_.push_back(a.ext);
    if (anns_.size() > 8) throw ModelError("too many distinct extended-atom annotations");
    collect_annotations(*a.ext);
  }

  void collect_annotations(const Base& b) {
    for (const auto& r : b.rules()) {
      note_ext(r.concl);
      for (const auto& p : r.premises) {
        note_ext(p.concl);
        for (const auto& h : p.hyps) note_ext(h);
      }
    }
  }

  void build_masks(const Base& base) {
    std::size_t n = std::size_t{1} << anns_.size();
    mask_rules_.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<const BaseRule*> rules;
      std::set<std::string> seen;
      auto add = [&](const std::vector<BaseRule>& rs) {
        for (const auto& r : rs) {
          auto k = rule_key(r);
          if (seen.insert(k).second) rules.push_back(&r);
        }
      };
      add(base.rules());
      for (std::size_t j = 0; j < anns_.size(); ++j)
        if (m & (std::size_t{1} << j)) add(anns_[j]->rules());
      mask_rules_[m] = std::move(rules);
    }
  }

  int intern(const InferonicAtom& a) {
    auto k = iatom_key(a);
    auto it = atom_ids_.find(k);
    if (it != atom_ids_.end()) return it->second;
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(a);
    atom_ids_.emplace(std::move(k), id);
    if (a.ext) intern(make_iatom(a.atom, a.pol));
    return id;
  }

  void intern_rule_atoms() {
    for (const BaseRule* r : mask_rules_.back()) {  // the largest mask covers every rule
      intern(r->concl);
      for (const auto& p : r->premises) {
        intern(p.concl);
        for (const auto& h : p.hyps) intern(h);
      }
    }
  }

  void resolve_ext_links() {
    ext_ann_.assign(atoms_.size(), -1);
    ext_plain_.assign(atoms_.size(), -1);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!atoms_[i].ext) continue;
      for (std::size_t j = 0; j < anns_.size(); ++j) {
        if (anns_[j]->same_rules(*atoms_[i].ext)) {
          ext_ann_[i] = static_cast<int>(j);
          break;
        }
      }
      ext_plain_[i] = atom_ids_.at(iatom_key(make_iatom(atoms_[i].atom, atoms_[i].pol)));
    }
  }

  std::vector<int> ids_of(const std::vector<InferonicAtom>& v) {
    std::vector<int> out;
    for (const auto& a : v) out.push_back(intern(a));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  int intern_ctx(std::vector<int> ids) {
    auto it = ctx_ids_.find(ids);
    if (it != ctx_ids_.end()) return it->second;
    int id = static_cast<int>(ctxs_.size());
    ctx_ids_.emplace(ids, id);
    ctxs_.push_back(std::move(ids));
    return id;
  }

  static std::vector<int> union_ids(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  void close_contexts() {
    std::set<std::vector<int>> hsets;
    for (const BaseRule* r : mask_rules_.back())
      for (const auto& p : r->premises) {
        std::vector<int> ids;
        for (const auto& h : p.hyps) ids.push_back(atom_ids_.at(iatom_key(h)));
        std::sort(ids.begin(), ids.end());
        hsets.insert(std::move(ids));
      }
    hyp_sets_.assign(hsets.begin(), hsets.end());

    for (std::size_t i = 0; i < ctxs_.size(); ++i) {
      for (const auto& h : hyp_sets_) {
        auto u = union_ids(ctxs_[i], h);
        intern_ctx(std::move(u));
        if (ctxs_.size() > 4096) throw ModelError("context closure too large");
      }
    }
  }

  int ctx_of_union(int c, const std::vector<int>& hyp_ids) const {
    return ctx_ids_.at(union_ids(ctxs_[c], hyp_ids));
  }

  void saturate() {
    seq_.assign(n_masks() * ctxs_.size() * atoms_.size(), 0);
    for (std::size_t m = 0; m < n_masks(); ++m)
      for (std::size_t c = 0; c < ctxs_.size(); ++c)
        for (int a : ctxs_[c]) seq_[idx(m, static_cast<int>(c), a)] = next_seq_++;

    // Premise contexts and atom ids resolved once per rule.
    struct RuleView {
      int concl;
      std::vector<std::pair<std::vector<int>, int>> premises;  // (hyp ids, concl id)
      const BaseRule* src;
    };
    std::vector<std::vector<RuleView>> views(n_masks());
    for (std::size_t m = 0; m < n_masks(); ++m) {
      for (const BaseRule* r : mask_rules_[m]) {
        RuleView v;
        v.src = r;
        v.concl = atom_ids_.at(iatom_key(r->concl));
        for (const auto& p : r->premises) {
          std::vector<int> hyp_ids;
          for (const auto& h : p.hyps) hyp_ids.push_back(atom_ids_.at(iatom_key(h)));
          std::sort(hyp_ids.begin(), hyp_ids.end());
          v.premises.emplace_back(std::move(hyp_ids), atom_ids_.at(iatom_key(p.concl)));
        }
        views[m].push_back(std::move(v));
      }
    }

    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t m = 0; m < n_masks(); ++m) {
        for (std::size_t c = 0; c < ctxs_.size(); ++c) {
          int ci = static_cast<int>(c);
          for (const auto& v : views[m]) {
            if (seq_at(m, ci, v.concl) > 0) continue;
            bool ok = true;
            for (const auto& [hyp_ids, q] : v.premises) {
              int pc = hyp_ids.empty() ? ci : ctx_of_union(ci, hyp_ids);
              if (seq_at(m, pc, q) == 0) {
                ok = false;
                break;
              }
            }
            if (ok) {
              seq_[idx(m, ci, v.concl)] = next_seq_++;
              changed = true;
            }
          }
          for (std::size_t a = 0; a < atoms_.size(); ++a) {
            int j = ext_ann_[a];
            if (j < 0) continue;
            std::size_t up = m | (std::size_t{1} << j);
            int ai = static_cast<int>(a);
            if (seq_at(m, ci, ai) == 0 && seq_at(up, ci, ext_plain_[a]) > 0) {
              seq_[idx(m, ci, ai)] = next_seq_++;
              changed = true;
            }
            if (seq_at(up, ci, ext_plain_[a]) == 0 && seq_at(m, ci, ai) > 0) {
              seq_[idx(up, ci, ext_plain_[a])] = next_seq_++;
              changed = true;
            }
          }
        }
      }
    }
  }

  DerivationTree extract_at(std::size_t m, int c, int a) const {
    int my_seq = seq_at(m, c, a);
    // Ref wins whenever the atom sits in the context.
    if (std::binary_search(ctxs_[c].begin(), ctxs_[c].end(), a)) {
      DerivationTree t;
      t.step = DerivationTree::Step::Ref;
      t.conclusion = atoms_[a];
      return t;
    }
    for (const BaseRule* r : mask_rules_[m]) {
      if (!(atom_ids_.at(iatom_key(r->concl)) == a)) continue;
      bool ok = true;
      std::vector<std::pair<int, int>> premise_judgments;  // (ctx, atom)
      for (const auto& p : r->premises) {
        std::vector<int> hyp_ids;
        for (const auto& h : p.hyps) hyp_ids.push_back(atom_ids_.at(iatom_key(h)));
        std::sort(hyp_ids.begin(), hyp_ids.end());
        int pc = hyp_ids.empty() ? c : ctx_of_union_const(c, hyp_ids);
        int q = atom_ids_.at(iatom_key(p.concl));
        int s = seq_at(m, pc, q);
        if (s == 0 || s >= my_seq) {
          ok = false;
          break;
        }
        premise_judgments.emplace_back(pc, q);
      }
      if (!ok) continue;
      DerivationTree t;
      t.step = DerivationTree::Step::App;
      t.conclusion = atoms_[a];
      t.rule = *r;
      for (const auto& [pc, q] : premise_judgments) t.subs.push_back(extract_at(m, pc, q));
      return t;
    }
    // Bridge justifications.
    if (ext_ann_[a] >= 0) {
      std::size_t up = m | (std::size_t{1} << ext_ann_[a]);
      int s = seq_at(up, c, ext_plain_[a]);
      if (s > 0 && s < my_seq) {
        DerivationTree t;
        t.step = DerivationTree::Step::Delegate;
        t.conclusion = atoms_[a];
        t.subs.push_back(extract_at(up, c, ext_plain_[a]));
        return t;
      }
    }
    for (std::size_t e = 0; e < atoms_.size(); ++e) {
      if (ext_ann_[e] < 0 || ext_plain_[e] != a) continue;
      std::size_t bit = std::size_t{1} << ext_ann_[e];
      if (!(m & bit)) continue;
      for (std::size_t src : {m, m & ~bit}) {
        int s = seq_at(src, c, static_cast<int>(e));
        if (s > 0 && s < my_seq) {
          DerivationTree t;
          t.step = DerivationTree::Step::Delegate;
          t.conclusion = atoms_[a];
          t.subs.push_back(extract_at(src, c, static_cast<int>(e)));
          return t;
        }
      }
    }
    throw ModelError("internal: no justification found during extraction");
  }

  int ctx_of_union_const(int c, const std::vector<int>& hyp_ids) const {
    std::vector<int> u = union_ids(ctxs_[c], hyp_ids);
    return ctx_ids_.at(u);
  }
};

std::pair<BaseRef, InferonicAtom> desugar_goal(BaseRef base, InferonicAtom goal) {
  while (goal.ext) {
    base = base_union(base, goal.ext);
    goal = make_iatom(goal.atom, goal.pol);
  }
  return {std::move(base), std::move(goal)};
}

}  // namespace

bool DerivationTree::operator==(const DerivationTree& o) const {
  if (step != o.step || !(conclusion == o.conclusion) || subs.size() != o.subs.size()) return false;
  if (step == Step::App && rule_key(rule) != rule_key(o.rule)) return false;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (!(subs[i] == o.subs[i])) return false;
  return true;
}

bool derives(const Base& base, const Site& context, const InferonicAtom& goal) {
  auto [b, g] = desugar_goal(std::make_shared<Base>(base), goal);
  Engine e(*b, context);
  return e.derivable(g);
}

std::optional<DerivationTree> derivation(const Base& base, const Site& context,
                                         const InferonicAtom& goal) {
  auto [b, g] = desugar_goal(std::make_shared<Base>(base), goal);
  Engine e(*b, context);
  return e.extract(g);
}

namespace {

bool replay_rec(const DerivationTree& t, const Base& base, const Site& context,
                std::vector<InferonicAtom> discharged) {
  switch (t.step) {
    case DerivationTree::Step::Ref: {
      for (const auto& a : context.atoms)
        if (a == t.conclusion) return true;
      for (const auto& a : discharged)
        if (a == t.conclusion) return true;
      return false;
    }
    case DerivationTree::Step::App: {
      bool in_base = false;
      for (const auto& r : base.rules())
        if (r == t.rule) in_base = true;
      if (!in_base) return false;
      if (!(t.rule.concl == t.conclusion)) return false;
      if (t.subs.size() != t.rule.premises.size()) return false;
      for (std::size_t i = 0; i < t.subs.size(); ++i) {
        const auto& p = t.rule.premises[i];
        if (!(t.subs[i].conclusion == p.concl)) return false;
        auto d2 = discharged;
        d2.insert(d2.end(), p.hyps.begin(), p.hyps.end());
        if (!replay_rec(t.subs[i], base, context, std::move(d2))) return false;
      }
      return true;
    }
    case DerivationTree::Step::Delegate: {
      if (t.subs.size() != 1) return false;
      const auto& sub = t.subs[0];
      if (t.conclusion.ext) {
        // down: <P,b>_C at B from <P,b> at B u C
        if (!(sub.conclusion == make_iatom(t.conclusion.atom, t.conclusion.pol))) return false;
        BaseRef joined = base_union(std::make_shared<Base>(base), t.conclusion.ext);
        return replay_rec(sub, *joined, context, std::move(discharged));
      }
      if (sub.conclusion.ext) {
        // up: <P,b> at B u C from <P,b>_C; the subtree replays at the larger base too
        if (!(t.conclusion == make_iatom(sub.conclusion.atom, sub.conclusion.pol))) return false;
        return replay_rec(sub, base, context, std::move(discharged));
      }
      return false;
    }
  }
  return false;
}

}  // namespace

bool replay(const DerivationTree& tree, const Base& base, const Site& context) {
  return replay_rec(tree, base, context, {});
}

namespace {

DerivationTree graft(const DerivationTree& t, const InferonicAtom& target,
                     const DerivationTree& replacement, std::vector<InferonicAtom> discharged) {
  if (t.step == DerivationTree::Step::Ref) {
    bool is_discharged = false;
    for (const auto& a : discharged)
      if (a == t.conclusion) is_discharged = true;
    if (!is_discharged && t.conclusion == target) return replacement;
    return t;
  }
  DerivationTree out = t;
  out.subs.clear();
  for (std::size_t i = 0; i < t.subs.size(); ++i) {
    auto d2 = discharged;
    if (t.step == DerivationTree::Step::App) {
      const auto& hyps = t.rule.premises[i].hyps;
      d2.insert(d2.end(), hyps.begin(), hyps.end());
    }
    out.subs.push_back(graft(t.subs[i], target, replacement, std::move(d2)));
  }
  return out;
}

}  // namespace

namespace {

bool rules_within(const DerivationTree& t, const Base& base) {
  if (t.step == DerivationTree::Step::App) {
    bool found = false;
    for (const auto& r : base.rules())
      if (r == t.rule) found = true;
    if (!found) return false;
  }
  for (const auto& s : t.subs)
    if (!rules_within(s, base)) return false;
  return true;
}

}  // namespace

DerivationTree cut(const DerivationTree& d1, const DerivationTree& d2, const Base& base) {
  if (!rules_within(d1, base) || !rules_within(d2, base))
    throw ModelError("cut: derivations use rules outside the given base");
  return graft(d2, d1.conclusion, d1, {});
}

bool consistent(const Base& base, const Universe& u) {
  DeriveCache cache;
  auto b = std::make_shared<Base>(base);
  Site empty{"", {}};
  for (const auto& a : closed_atoms(u)) {
    if (cache.derives(b, empty, make_iatom(a, Polarity::Denial)) &&
        cache.derives(b, empty, make_iatom(a, Polarity::Assertion)))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DeriveCache

struct DeriveCache::SatResult {
  Engine engine;
  SatResult(const Base& b, const Site& c) : engine(b, c) {}
};

std::shared_ptr<const DeriveCache::SatResult> DeriveCache::saturate(const BaseRef& base,
                                                                    const Site& context) {
  std::string key = base->rules_key();
  key += "|";
  for (const auto& a : context.atoms) key += iatom_key(a);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto r = std::make_shared<SatResult>(*base, context);
  std::lock_guard<std::mutex> lock(mu_);
  ++saturations_;
  auto [it, inserted] = cache_.emplace(std::move(key), std::move(r));
  return it->second;
}

bool DeriveCache::derives(const BaseRef& base, const Site& context, const InferonicAtom& goal) {
  auto [b, g] = desugar_goal(base, goal);
  return saturate(b, context)->engine.derivable(g);
}

}  // namespace inferon
