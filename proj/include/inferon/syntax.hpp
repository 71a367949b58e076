// Core domain types: terms, atoms, inferonic atoms, rules, bases, inferons,
// formulas, sites, agents, universes.
//
// All values are immutable after construction and safe to share across
// threads. Identity is structural throughout; base names exist only for
// reference resolution and display.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace inferon {

class Base;
using BaseRef = std::shared_ptr<const Base>;

// ---------------------------------------------------------------------------
// Terms

struct Term {
  enum class Kind { Constant, Variable, App };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // App only

  static Term constant(std::string n) { return Term{Kind::Constant, std::move(n), {}}; }
  static Term variable(std::string n) { return Term{Kind::Variable, std::move(n), {}}; }
  static Term app(std::string fn, std::vector<Term> a) {
    return Term{Kind::App, std::move(fn), std::move(a)};
  }

  bool closed() const;
  void collect_vars(std::set<std::string>& out) const;
  Term substitute(const std::string& var, const Term& replacement) const;

  bool operator==(const Term& o) const;
  bool operator<(const Term& o) const;  // lexicographic on the printed form
};

std::string term_key(const Term& t);

// ---------------------------------------------------------------------------
// Atoms and inferonic atoms

struct Atom {
  std::string pred;
  std::vector<Term> args;  // arity 0 = propositional letter

  int arity() const { return static_cast<int>(args.size()); }
  bool closed() const;
  void collect_vars(std::set<std::string>& out) const;
  Atom substitute(const std::string& var, const Term& t) const;

  bool operator==(const Atom& o) const;
  bool operator<(const Atom& o) const;
};

std::string atom_key(const Atom& a);

enum class Polarity : int { Denial = 0, Assertion = 1 };

inline Polarity polarity_of(int v) {
  return v == 0 ? Polarity::Denial : Polarity::Assertion;
}

// An inferonic atom <P,b>. The optional `ext` annotation turns it into the
// extended kind <P,b>_P whose derivability in B delegates to B u P; extended
// atoms arise only in the completeness machinery, never from the surface
// syntax. An annotation whose base has no rules is normalized away.
struct InferonicAtom {
  Atom atom;
  Polarity pol = Polarity::Assertion;
  BaseRef ext;  // null for the plain kind

  bool closed() const { return atom.closed(); }
  bool operator==(const InferonicAtom& o) const;
  bool operator<(const InferonicAtom& o) const;
};

InferonicAtom make_iatom(Atom a, Polarity b);
InferonicAtom make_extended_iatom(Atom a, Polarity b, BaseRef annotation);
std::string iatom_key(const InferonicAtom& ia);

// ---------------------------------------------------------------------------
// Rules and bases

// One premise of a rule: conclusion q derivable from dischargeable
// hypotheses H. Empty H gives the level-1 premise shape.
struct RulePremise {
  std::vector<InferonicAtom> hyps;  // sorted, unique
  InferonicAtom concl;
};

// ((H1 => q1), ..., (Hn => qn)) => r.  n = 0 is an axiom; a level-2 rule
// with an empty premise list is the same thing.
struct BaseRule {
  std::vector<RulePremise> premises;
  InferonicAtom concl;

  int level() const;
};

BaseRule make_rule(std::vector<RulePremise> premises, InferonicAtom concl);
BaseRule make_axiom(InferonicAtom concl);
std::string rule_key(const BaseRule& r);
bool operator==(const BaseRule& a, const BaseRule& b);
bool operator<(const BaseRule& a, const BaseRule& b);

// A finite, named set of rules. Rules are kept sorted and duplicate-free;
// two bases are equal iff their rule sets are.
class Base {
 public:
  Base(std::string name, std::vector<BaseRule> rules);

  const std::string& name() const { return name_; }
  const std::vector<BaseRule>& rules() const { return rules_; }
  const std::string& rules_key() const { return rules_key_; }
  std::size_t fingerprint() const { return fingerprint_; }
  bool empty() const { return rules_.empty(); }

  bool same_rules(const Base& o) const { return rules_key_ == o.rules_key_; }

  static BaseRef make(std::string name, std::vector<BaseRule> rules);
  static BaseRef empty_base();

 private:
  std::string name_;
  std::vector<BaseRule> rules_;
  std::string rules_key_;
  std::size_t fingerprint_;
};

// Set union of rule sets; the union's name is the canonical sorted
// concatenation of the operands' component names.
BaseRef base_union(const BaseRef& a, const BaseRef& b);
bool base_equal(const BaseRef& a, const BaseRef& b);

// ---------------------------------------------------------------------------
// Sites

struct Site {
  std::string name;
  std::vector<InferonicAtom> atoms;  // sorted, unique
};

Site make_site(std::string name, std::vector<InferonicAtom> atoms);
Site site_union(const Site& a, const Site& b);
Site site_difference(const Site& a, const Site& b);
bool site_subset(const Site& a, const Site& b);
bool site_equal(const Site& a, const Site& b);

// ---------------------------------------------------------------------------
// Formulas

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind {
    Inferon,   // <P @ B, b>
    Compound,  // <body @ B, b> with logical structure inside the brackets
    BodyAtom,  // bare atom; occurs only inside Compound bodies
    Bottom,
    And,
    Or,
    Implies,
    ForAll,
    Exists,
    Box,      // [a] phi
    Diamond,  // <a> phi
  };

  Kind kind() const { return kind_; }
  const Atom& atom() const { return atom_; }
  const BaseRef& base() const { return base_; }
  Polarity pol() const { return pol_; }
  const FormulaRef& lhs() const { return lhs_; }
  const FormulaRef& rhs() const { return rhs_; }
  const FormulaRef& body() const { return lhs_; }
  const std::string& label() const { return label_; }  // bound var / agent name

  static FormulaRef inferon(Atom a, BaseRef b, Polarity p);
  static FormulaRef compound(FormulaRef body, BaseRef b, Polarity p);
  static FormulaRef body_atom(Atom a);
  static FormulaRef bottom();
  static FormulaRef conj(FormulaRef l, FormulaRef r);
  static FormulaRef disj(FormulaRef l, FormulaRef r);
  static FormulaRef implies(FormulaRef l, FormulaRef r);
  static FormulaRef forall(std::string var, FormulaRef body);
  static FormulaRef exists(std::string var, FormulaRef body);
  static FormulaRef box(std::string agent, FormulaRef body);
  static FormulaRef diamond(std::string agent, FormulaRef body);

 protected:
  Formula() = default;

 private:
  Kind kind_ = Kind::Bottom;
  Atom atom_;
  BaseRef base_;
  Polarity pol_ = Polarity::Assertion;
  FormulaRef lhs_, rhs_;
  std::string label_;
};

bool formula_equal(const FormulaRef& a, const FormulaRef& b);
bool formula_closed(const FormulaRef& f);
void formula_free_vars(const FormulaRef& f, std::set<std::string>& out);
FormulaRef formula_substitute(const FormulaRef& f, const std::string& var, const Term& t);
bool formula_has_modality(const FormulaRef& f);
bool formula_has_compound(const FormulaRef& f);
void formula_collect_bases(const FormulaRef& f, std::vector<BaseRef>& out);
void formula_collect_inferons(const FormulaRef& f, std::vector<FormulaRef>& out);

// Thrown when an operation is applied outside the fragment it is defined on
// (e.g. complexity or morphism images of modal formulas).
struct FragmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complexity measure driving the Chu-equivalence induction:
//   gamma(inferon) = gamma(bot) = 1
//   gamma(phi o psi) = 1 + gamma(phi) + gamma(psi)   (o in {and, or, implies})
//   gamma(all x.phi) = 1 + gamma(phi)
//   gamma(ex x.phi)  = 2 + gamma(phi)
// Compound inferons are measured through their expansion. Modalities are
// outside the fragment and raise FragmentError.
int gamma(const FormulaRef& f);
int gamma_pair(const std::vector<FormulaRef>& theta, const FormulaRef& f);

// Rewrites a compound inferon into a formula over non-compound inferons,
// pushing the local base and polarity through the body connectives (with the
// polarity-0 rows dualizing and/or and the quantifiers). Identity on
// everything that is not compound; recurses through connectives.
FormulaRef expand_compound(const FormulaRef& f);

// ---------------------------------------------------------------------------
// Agents and universes

struct Agent {
  std::string name;
  std::vector<BaseRef> bases;  // the catalog Bases(a); non-empty when used
};

struct PredSig {
  std::string name;
  int arity = 0;
};

struct FunSig {
  std::string name;
  int arity = 1;
};

// The finitization contract: a fixed vocabulary, a finite closed-term pool,
// and a candidate-rule pool from which every "for all C >= B" quantifier
// draws its extensions.
struct Universe {
  std::vector<PredSig> preds;
  std::vector<std::string> constants;
  std::vector<FunSig> functions;
  int term_depth = 0;
  std::vector<BaseRule> candidates;
  std::map<std::string, BaseRef> bases;
  std::map<std::string, Site> sites;
  std::map<std::string, Agent> agents;

  std::optional<int> pred_arity(const std::string& name) const;
};

// All closed terms over the universe's constants and function symbols with
// application nesting up to term_depth; deterministic (depth-major, then
// lexicographic) order.
std::vector<Term> closed_terms(const Universe& u);

// Every vocabulary predicate instantiated with closed terms, same ordering
// discipline.
std::vector<Atom> closed_atoms(const Universe& u);

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace inferon
