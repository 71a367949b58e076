// Natural-deduction prover for the inferon language. Sequents Gamma |- phi
// are searched goal-directed with iterative deepening; inferon leaves close
// by the bounded side condition
//
//   for all P' >= P (from the universe pool), if every member of Gamma is
//   supported at P' then <P,b> is derivable in P'.
//
// Also hosts the executable completeness machinery: flattening maps, the
// base N encoding the proof rules over flattened atoms, and the agreement
// check between flattened derivability and flattened support.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inferon/semantics.hpp"
#include "inferon/syntax.hpp"

namespace inferon {

struct NJProof {
  enum class Rule {
    Ax,
    InferonLeaf,
    BotE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    AllI,
    AllE,
    ExI,
    ExE,
  };

  Rule rule = Rule::Ax;
  FormulaRef concl;
  std::vector<NJProof> subs;
  Term term;                             // AllE / ExI instantiation
  std::string eigen;                     // AllI / ExE eigenvariable
  std::vector<std::string> certificate;  // inferon-leaf extension record

  int size() const;
};

enum class ProveStatus { Proved, NoProof, DepthExceeded };

struct ProveResult {
  ProveStatus status = ProveStatus::NoProof;
  std::optional<NJProof> proof;
};

ProveResult nj_prove(const Universe& u, const std::vector<FormulaRef>& gamma,
                     const FormulaRef& goal, int max_depth, EvalConfig cfg = {});

// Independent checker: recomputes every context from the root, verifies rule
// applicability, eigenvariable freshness and inferon-leaf side conditions.
bool nj_replay(const Universe& u, const std::vector<FormulaRef>& gamma, const NJProof& proof,
               EvalConfig cfg = {});

// ---------------------------------------------------------------------------
// Flattening

// Injective maps over the subformula closure Gamma' of Gamma u {phi}:
// flat sends each member to an inferon (fixing inferons and bottom), and
// flat_minus to an inferonic atom (inferons go to their extended atoms,
// bottom to a reserved marker). natural/natural_minus invert them.
struct FlatMap {
  std::vector<FormulaRef> domain;  // canonical order
  std::map<std::string, FormulaRef> flat;          // formula key -> inferon
  std::map<std::string, InferonicAtom> flat_minus; // formula key -> atom
  std::map<std::string, FormulaRef> inv_flat;      // formula key of image -> source
  std::map<std::string, FormulaRef> inv_flat_minus;  // atom key -> source
  InferonicAtom bottom_marker;
  std::vector<PredSig> fresh_preds;  // marker + fresh letters, for vocabularies

  const FormulaRef& flat_of(const FormulaRef& f) const;
  const InferonicAtom& flat_minus_of(const FormulaRef& f) const;
  FormulaRef natural_of(const FormulaRef& image) const;
  FormulaRef natural_minus_of(const InferonicAtom& image) const;
};

// Propositional fragment only; quantifiers or modalities raise
// FragmentError. Compound inferons are expanded before flattening.
FlatMap flatten(const std::vector<FormulaRef>& gamma, const FormulaRef& phi);

// The base N: for every domain member of the matching shape,
//   1. (f' => g') => (f -> g)'          6. (=> f') => (f | g)'
//   2. (=> (f -> g)'), (=> f') => g'    7. (=> g') => (f | g)'
//   3. (=> f'), (=> g') => (f & g)'     8. (=> (f|g)'), (f' => a), (g' => a) => a
//   4. (=> (f & g)') => f'              9. (=> bot') => a
//   5. (=> (f & g)') => g'
// where ' is flat_minus and a ranges over the universe's closed inferonic
// atoms plus the flattened atoms themselves.
BaseRef build_base_n(const FlatMap& fm, const Universe& u);

struct Comp3Report {
  bool left = false;   // flattened derivability
  bool right = false;  // flattened support
  bool agree = false;
  std::string diagnostic;  // set on disagreement
};

// Γ'⁻ |-_B φ'⁻  vs  Γ' |=_B φ' ; the left side runs through the derivability
// engine with extended atoms, the right through the support evaluator over a
// universe augmented with the flattening vocabulary.
Comp3Report check_comp3(const Universe& u, const std::vector<FormulaRef>& gamma,
                        const FormulaRef& phi, const BaseRef& base, EvalConfig cfg = {});

}  // namespace inferon
