// Exact decision procedure for atomic derivability  P |-_B i  under
//
//   (Ref)    P, i |-_B i
//   (App_R)  R in B and, for all i, Q u P_i |-_B q_i  implies  Q |-_B r
//
// computed as a monotone fixpoint over judgments (context, atom) restricted
// to the atoms occurring in the base, context and goal. Extended atoms
// <P,b>_C delegate to the base enlarged by C; the fixpoint then runs jointly
// over the finite family of bases reachable through such annotations.
#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "inferon/syntax.hpp"

namespace inferon {

// Replayable witness for a derivability judgment. Spine steps are Ref (a
// context or discharged-hypothesis occurrence), App (a rule of the base,
// with one subtree per premise, discharging that premise's hypotheses), or
// Delegate (an extended-atom conclusion justified in the annotated base).
struct DerivationTree {
  enum class Step { Ref, App, Delegate };

  Step step = Step::Ref;
  InferonicAtom conclusion;
  BaseRule rule;                      // App only
  std::vector<DerivationTree> subs;   // App: one per premise; Delegate: one

  bool operator==(const DerivationTree& o) const;
};

bool derives(const Base& base, const Site& context, const InferonicAtom& goal);
std::optional<DerivationTree> derivation(const Base& base, const Site& context,
                                         const InferonicAtom& goal);

// Checks a tree bottom-up against a base and ambient context: every Ref leaf
// must be in the context or discharged on its branch, every App rule must
// belong to the base, every premise subtree must conclude its premise.
bool replay(const DerivationTree& tree, const Base& base, const Site& context);

// Substitution: from d1 : P |- p and d2 : Q, p |- q builds a derivation of
// P u Q |- q by grafting d1 onto the undischarged Ref(p) leaves of d2.
// Throws ModelError if the two trees were built over different bases.
DerivationTree cut(const DerivationTree& d1, const DerivationTree& d2, const Base& base);

// No atom over the universe's closed vocabulary is derivable in both
// polarities from the empty context.
bool consistent(const Base& base, const Universe& u);

// Memoizing front-end shared by the evaluators. Internally synchronized;
// per-(base, context) saturations are cached and reused across goals.
class DeriveCache {
 public:
  bool derives(const BaseRef& base, const Site& context, const InferonicAtom& goal);
  std::size_t saturations() const { return saturations_; }

 private:
  struct SatResult;
  std::shared_ptr<const SatResult> saturate(const BaseRef& base, const Site& context);

  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const SatResult>> cache_;
  std::size_t saturations_ = 0;
};

}  // namespace inferon
