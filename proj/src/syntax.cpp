#include "inferon/syntax.hpp"

#include <algorithm>
#include <functional>

namespace inferon {

// ---------------------------------------------------------------------------
// Terms

bool Term::closed() const {
  if (kind == Kind::Variable) return false;
  for (const auto& a : args)
    if (!a.closed()) return false;
  return true;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (kind == Kind::Variable) out.insert(name);
  for (const auto& a : args) a.collect_vars(out);
}

Term Term::substitute(const std::string& var, const Term& replacement) const {
  if (kind == Kind::Variable) return name == var ? replacement : *this;
  if (kind == Kind::Constant) return *this;
  std::vector<Term> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(a.substitute(var, replacement));
  return Term::app(name, std::move(out));
}

std::string term_key(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Constant: return t.name;
    case Term::Kind::Variable: return "?" + t.name;
    case Term::Kind::App: {
      std::string s = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ",";
        s += term_key(t.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

bool Term::operator==(const Term& o) const {
  return kind == o.kind && name == o.name && args == o.args;
}

bool Term::operator<(const Term& o) const { return term_key(*this) < term_key(o); }

// ---------------------------------------------------------------------------
// Atoms

bool Atom::closed() const {
  for (const auto& t : args)
    if (!t.closed()) return false;
  return true;
}

void Atom::collect_vars(std::set<std::string>& out) const {
  for (const auto& t : args) t.collect_vars(out);
}

Atom Atom::substitute(const std::string& var, const Term& t) const {
  Atom out{pred, {}};
  out.args.reserve(args.size());
  for (const auto& a : args) out.args.push_back(a.substitute(var, t));
  return out;
}

std::string atom_key(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string s = a.pred + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += term_key(a.args[i]);
  }
  return s + ")";
}

bool Atom::operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
bool Atom::operator<(const Atom& o) const { return atom_key(*this) < atom_key(o); }

// ---------------------------------------------------------------------------
// Inferonic atoms

InferonicAtom make_iatom(Atom a, Polarity b) { return InferonicAtom{std::move(a), b, nullptr}; }

InferonicAtom make_extended_iatom(Atom a, Polarity b, BaseRef annotation) {
  if (annotation && annotation->empty()) annotation = nullptr;  // <P,b>_0 == <P,b>
  return InferonicAtom{std::move(a), b, std::move(annotation)};
}

std::string iatom_key(const InferonicAtom& ia) {
  std::string s = "<" + atom_key(ia.atom) + "," + (ia.pol == Polarity::Assertion ? "1" : "0") + ">";
  if (ia.ext) s += "@{" + ia.ext->rules_key() + "}";
  return s;
}

bool InferonicAtom::operator==(const InferonicAtom& o) const {
  if (!(atom == o.atom) || pol != o.pol) return false;
  if (static_cast<bool>(ext) != static_cast<bool>(o.ext)) return false;
  return !ext || ext->same_rules(*o.ext);
}

bool InferonicAtom::operator<(const InferonicAtom& o) const {
  return iatom_key(*this) < iatom_key(o);
}

// ---------------------------------------------------------------------------
// Rules

int BaseRule::level() const {
  if (premises.empty()) return 0;
  for (const auto& p : premises)
    if (!p.hyps.empty()) return 2;
  return 1;
}

static std::vector<InferonicAtom> sorted_unique(std::vector<InferonicAtom> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

BaseRule make_rule(std::vector<RulePremise> premises, InferonicAtom concl) {
  for (auto& p : premises) p.hyps = sorted_unique(std::move(p.hyps));
  return BaseRule{std::move(premises), std::move(concl)};
}

BaseRule make_axiom(InferonicAtom concl) { return BaseRule{{}, std::move(concl)}; }

std::string rule_key(const BaseRule& r) {
  std::string s;
  for (const auto& p : r.premises) {
    s += "(";
    for (const auto& h : p.hyps) s += iatom_key(h) + " ";
    s += "=> " + iatom_key(p.concl) + ") ";
  }
  s += "=> " + iatom_key(r.concl);
  return s;
}

bool operator==(const BaseRule& a, const BaseRule& b) { return rule_key(a) == rule_key(b); }
bool operator<(const BaseRule& a, const BaseRule& b) { return rule_key(a) < rule_key(b); }

// ---------------------------------------------------------------------------
// Bases

Base::Base(std::string name, std::vector<BaseRule> rules) : name_(std::move(name)) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  rules_ = std::move(rules);
  for (const auto& r : rules_) rules_key_ += rule_key(r) + ". ";
  fingerprint_ = std::hash<std::string>{}(rules_key_);
}

BaseRef Base::make(std::string name, std::vector<BaseRule> rules) {
  return std::make_shared<Base>(std::move(name), std::move(rules));
}

BaseRef Base::empty_base() {
  static const BaseRef e = std::make_shared<Base>("0", std::vector<BaseRule>{});
  return e;
}

static std::vector<std::string> name_parts(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == '+') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

BaseRef base_union(const BaseRef& a, const BaseRef& b) {
  if (!a) return b ? b : Base::empty_base();
  if (!b || b->empty()) return a;
  if (a->empty()) return b;
  std::vector<BaseRule> rules = a->rules();
  rules.insert(rules.end(), b->rules().begin(), b->rules().end());
  std::set<std::string> parts;
  for (const auto& p : name_parts(a->name())) parts.insert(p);
  for (const auto& p : name_parts(b->name())) parts.insert(p);
  std::string name;
  for (const auto& p : parts) {
    if (!name.empty()) name += "+";
    name += p;
  }
  return Base::make(name, std::move(rules));
}

bool base_equal(const BaseRef& a, const BaseRef& b) {
  if (a == b) return true;
  const Base& x = a ? *a : *Base::empty_base();
  const Base& y = b ? *b : *Base::empty_base();
  return x.same_rules(y);
}

// ---------------------------------------------------------------------------
// Sites

Site make_site(std::string name, std::vector<InferonicAtom> atoms) {
  return Site{std::move(name), sorted_unique(std::move(atoms))};
}

Site site_union(const Site& a, const Site& b) {
  std::vector<InferonicAtom> atoms = a.atoms;
  atoms.insert(atoms.end(), b.atoms.begin(), b.atoms.end());
  std::string name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "+" + b.name);
  return make_site(std::move(name), std::move(atoms));
}

Site site_difference(const Site& a, const Site& b) {
  std::vector<InferonicAtom> atoms;
  for (const auto& x : a.atoms) {
    if (std::find(b.atoms.begin(), b.atoms.end(), x) == b.atoms.end()) atoms.push_back(x);
  }
  std::string name = b.name.empty() ? a.name : a.name + "\\" + b.name;
  return make_site(std::move(name), std::move(atoms));
}

bool site_subset(const Site& a, const Site& b) {
  for (const auto& x : a.atoms)
    if (std::find(b.atoms.begin(), b.atoms.end(), x) == b.atoms.end()) return false;
  return true;
}

bool site_equal(const Site& a, const Site& b) {
  return a.atoms.size() == b.atoms.size() && site_subset(a, b);
}

// ---------------------------------------------------------------------------
// Formulas

namespace {
// Gives the static factories access to the private constructor.
struct FormulaNode : Formula {};
}  // namespace

static std::shared_ptr<Formula> fresh_node() {
  return std::static_pointer_cast<Formula>(std::make_shared<FormulaNode>());
}

FormulaRef Formula::inferon(Atom a, BaseRef b, Polarity p) {
  auto f = fresh_node();
  f->kind_ = Kind::Inferon;
  f->atom_ = std::move(a);
  f->base_ = b ? std::move(b) : Base::empty_base();
  f->pol_ = p;
  return f;
}

FormulaRef Formula::compound(FormulaRef body, BaseRef b, Polarity p) {
  auto f = fresh_node();
  f->kind_ = Kind::Compound;
  f->lhs_ = std::move(body);
  f->base_ = b ? std::move(b) : Base::empty_base();
  f->pol_ = p;
  return f;
}

FormulaRef Formula::body_atom(Atom a) {
  auto f = fresh_node();
  f->kind_ = Kind::BodyAtom;
  f->atom_ = std::move(a);
  return f;
}

FormulaRef Formula::bottom() {
  auto f = fresh_node();
  f->kind_ = Kind::Bottom;
  return f;
}

FormulaRef Formula::conj(FormulaRef l, FormulaRef r) {
  auto f = fresh_node();
  f->kind_ = Kind::And;
  f->lhs_ = std::move(l);
  f->rhs_ = std::move(r);
  return f;
}

FormulaRef Formula::disj(FormulaRef l, FormulaRef r) {
  auto f = fresh_node();
  f->kind_ = Kind::Or;
  f->lhs_ = std::move(l);
  f->rhs_ = std::move(r);
  return f;
}

FormulaRef Formula::implies(FormulaRef l, FormulaRef r) {
  auto f = fresh_node();
  f->kind_ = Kind::Implies;
  f->lhs_ = std::move(l);
  f->rhs_ = std::move(r);
  return f;
}

FormulaRef Formula::forall(std::string var, FormulaRef body) {
  auto f = fresh_node();
  f->kind_ = Kind::ForAll;
  f->label_ = std::move(var);
  f->lhs_ = std::move(body);
  return f;
}

FormulaRef Formula::exists(std::string var, FormulaRef body) {
  auto f = fresh_node();
  f->kind_ = Kind::Exists;
  f->label_ = std::move(var);
  f->lhs_ = std::move(body);
  return f;
}

FormulaRef Formula::box(std::string agent, FormulaRef body) {
  auto f = fresh_node();
  f->kind_ = Kind::Box;
  f->label_ = std::move(agent);
  f->lhs_ = std::move(body);
  return f;
}

FormulaRef Formula::diamond(std::string agent, FormulaRef body) {
  auto f = fresh_node();
  f->kind_ = Kind::Diamond;
  f->label_ = std::move(agent);
  f->lhs_ = std::move(body);
  return f;
}

bool formula_equal(const FormulaRef& a, const FormulaRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Inferon:
      return a->atom() == b->atom() && a->pol() == b->pol() && base_equal(a->base(), b->base());
    case Formula::Kind::Compound:
      return a->pol() == b->pol() && base_equal(a->base(), b->base()) &&
             formula_equal(a->body(), b->body());
    case Formula::Kind::BodyAtom: return a->atom() == b->atom();
    case Formula::Kind::Bottom: return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_equal(a->lhs(), b->lhs()) && formula_equal(a->rhs(), b->rhs());
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond:
      return a->label() == b->label() && formula_equal(a->body(), b->body());
  }
  return false;
}

void formula_free_vars(const FormulaRef& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind()) {
    case Formula::Kind::Inferon:
    case Formula::Kind::BodyAtom: f->atom().collect_vars(out); return;
    case Formula::Kind::Bottom: return;
    case Formula::Kind::Compound: formula_free_vars(f->body(), out); return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      formula_free_vars(f->lhs(), out);
      formula_free_vars(f->rhs(), out);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      std::set<std::string> inner;
      formula_free_vars(f->body(), inner);
      inner.erase(f->label());
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: formula_free_vars(f->body(), out); return;
  }
}

bool formula_closed(const FormulaRef& f) {
  std::set<std::string> vars;
  formula_free_vars(f, vars);
  return vars.empty();
}

FormulaRef formula_substitute(const FormulaRef& f, const std::string& var, const Term& t) {
  if (!f) return f;
  switch (f->kind()) {
    case Formula::Kind::Inferon:
      return Formula::inferon(f->atom().substitute(var, t), f->base(), f->pol());
    case Formula::Kind::BodyAtom: return Formula::body_atom(f->atom().substitute(var, t));
    case Formula::Kind::Bottom: return f;
    case Formula::Kind::Compound:
      return Formula::compound(formula_substitute(f->body(), var, t), f->base(), f->pol());
    case Formula::Kind::And:
      return Formula::conj(formula_substitute(f->lhs(), var, t), formula_substitute(f->rhs(), var, t));
    case Formula::Kind::Or:
      return Formula::disj(formula_substitute(f->lhs(), var, t), formula_substitute(f->rhs(), var, t));
    case Formula::Kind::Implies:
      return Formula::implies(formula_substitute(f->lhs(), var, t),
                              formula_substitute(f->rhs(), var, t));
    case Formula::Kind::ForAll:
      if (f->label() == var) return f;  // bound occurrence shadows
      return Formula::forall(f->label(), formula_substitute(f->body(), var, t));
    case Formula::Kind::Exists:
      if (f->label() == var) return f;
      return Formula::exists(f->label(), formula_substitute(f->body(), var, t));
    case Formula::Kind::Box:
      return Formula::box(f->label(), formula_substitute(f->body(), var, t));
    case Formula::Kind::Diamond:
      return Formula::diamond(f->label(), formula_substitute(f->body(), var, t));
  }
  return f;
}

bool formula_has_modality(const FormulaRef& f) {
  if (!f) return false;
  switch (f->kind()) {
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return true;
    case Formula::Kind::Inferon:
    case Formula::Kind::BodyAtom:
    case Formula::Kind::Bottom: return false;
    case Formula::Kind::Compound:
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: return formula_has_modality(f->body());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_has_modality(f->lhs()) || formula_has_modality(f->rhs());
  }
  return false;
}

bool formula_has_compound(const FormulaRef& f) {
  if (!f) return false;
  switch (f->kind()) {
    case Formula::Kind::Compound: return true;
    case Formula::Kind::Inferon:
    case Formula::Kind::BodyAtom:
    case Formula::Kind::Bottom: return false;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return formula_has_compound(f->body());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_has_compound(f->lhs()) || formula_has_compound(f->rhs());
  }
  return false;
}

void formula_collect_bases(const FormulaRef& f, std::vector<BaseRef>& out) {
  if (!f) return;
  switch (f->kind()) {
    case Formula::Kind::Inferon:
    case Formula::Kind::Compound: {
      bool seen = false;
      for (const auto& b : out)
        if (base_equal(b, f->base())) seen = true;
      if (!seen) out.push_back(f->base());
      if (f->kind() == Formula::Kind::Compound) formula_collect_bases(f->body(), out);
      return;
    }
    case Formula::Kind::BodyAtom:
    case Formula::Kind::Bottom: return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      formula_collect_bases(f->lhs(), out);
      formula_collect_bases(f->rhs(), out);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: formula_collect_bases(f->body(), out); return;
  }
}

void formula_collect_inferons(const FormulaRef& f, std::vector<FormulaRef>& out) {
  if (!f) return;
  switch (f->kind()) {
    case Formula::Kind::Inferon: {
      for (const auto& g : out)
        if (formula_equal(g, f)) return;
      out.push_back(f);
      return;
    }
    case Formula::Kind::Compound: formula_collect_inferons(expand_compound(f), out); return;
    case Formula::Kind::BodyAtom:
    case Formula::Kind::Bottom: return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      formula_collect_inferons(f->lhs(), out);
      formula_collect_inferons(f->rhs(), out);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: formula_collect_inferons(f->body(), out); return;
  }
}

// ---------------------------------------------------------------------------
// Complexity and compound expansion

int gamma(const FormulaRef& f) {
  if (formula_has_modality(f)) throw FragmentError("gamma is undefined on modal formulas");
  switch (f->kind()) {
    case Formula::Kind::Inferon:
    case Formula::Kind::Bottom: return 1;
    case Formula::Kind::Compound: return gamma(expand_compound(f));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: return 1 + gamma(f->lhs()) + gamma(f->rhs());
    case Formula::Kind::ForAll: return 1 + gamma(f->body());
    case Formula::Kind::Exists: return 2 + gamma(f->body());
    case Formula::Kind::BodyAtom:
      throw FragmentError("bare atom outside a compound inferon has no complexity");
    default: throw FragmentError("gamma is undefined on this formula");
  }
}

int gamma_pair(const std::vector<FormulaRef>& theta, const FormulaRef& f) {
  int m = gamma(f);
  for (const auto& k : theta) m = std::max(m, gamma(k));
  return 1 + m;
}

// One rewrite layer for a compound body; recursion bottoms out at BodyAtom.
static FormulaRef expand_body(const FormulaRef& body, const BaseRef& base, Polarity pol) {
  switch (body->kind()) {
    case Formula::Kind::BodyAtom: return Formula::inferon(body->atom(), base, pol);
    case Formula::Kind::And:
      if (pol == Polarity::Assertion)
        return Formula::conj(expand_body(body->lhs(), base, pol), expand_body(body->rhs(), base, pol));
      return Formula::disj(expand_body(body->lhs(), base, pol), expand_body(body->rhs(), base, pol));
    case Formula::Kind::Or:
      if (pol == Polarity::Assertion)
        return Formula::disj(expand_body(body->lhs(), base, pol), expand_body(body->rhs(), base, pol));
      return Formula::conj(expand_body(body->lhs(), base, pol), expand_body(body->rhs(), base, pol));
    case Formula::Kind::Implies:
      if (pol == Polarity::Assertion)
        return Formula::implies(expand_body(body->lhs(), base, Polarity::Assertion),
                                expand_body(body->rhs(), base, Polarity::Assertion));
      return Formula::conj(expand_body(body->lhs(), base, Polarity::Assertion),
                           expand_body(body->rhs(), base, Polarity::Denial));
    case Formula::Kind::ForAll:
      if (pol == Polarity::Assertion)
        return Formula::forall(body->label(), expand_body(body->body(), base, pol));
      return Formula::exists(body->label(), expand_body(body->body(), base, pol));
    case Formula::Kind::Exists:
      if (pol == Polarity::Assertion)
        return Formula::exists(body->label(), expand_body(body->body(), base, pol));
      return Formula::forall(body->label(), expand_body(body->body(), base, pol));
    default:
      throw FragmentError("unsupported construct inside a compound inferon body");
  }
}

FormulaRef expand_compound(const FormulaRef& f) {
  switch (f->kind()) {
    case Formula::Kind::Compound: return expand_body(f->body(), f->base(), f->pol());
    case Formula::Kind::Inferon:
    case Formula::Kind::Bottom: return f;
    case Formula::Kind::And:
      return Formula::conj(expand_compound(f->lhs()), expand_compound(f->rhs()));
    case Formula::Kind::Or: return Formula::disj(expand_compound(f->lhs()), expand_compound(f->rhs()));
    case Formula::Kind::Implies:
      return Formula::implies(expand_compound(f->lhs()), expand_compound(f->rhs()));
    case Formula::Kind::ForAll: return Formula::forall(f->label(), expand_compound(f->body()));
    case Formula::Kind::Exists: return Formula::exists(f->label(), expand_compound(f->body()));
    case Formula::Kind::Box: return Formula::box(f->label(), expand_compound(f->body()));
    case Formula::Kind::Diamond: return Formula::diamond(f->label(), expand_compound(f->body()));
    case Formula::Kind::BodyAtom:
      throw FragmentError("bare atom outside a compound inferon body");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Universes

std::optional<int> Universe::pred_arity(const std::string& name) const {
  for (const auto& p : preds)
    if (p.name == name) return p.arity;
  return std::nullopt;
}

std::vector<Term> closed_terms(const Universe& u) {
  std::vector<Term> layer;
  for (const auto& c : u.constants) layer.push_back(Term::constant(c));
  std::sort(layer.begin(), layer.end());
  std::vector<Term> all = layer;
  std::vector<Term> prev = layer;  // terms up to the previous depth
  for (int d = 0; d < u.term_depth; ++d) {
    std::vector<Term> next;
    for (const auto& f : u.functions) {
      std::vector<std::vector<Term>> tuples = {{}};
      for (int i = 0; i < f.arity; ++i) {
        std::vector<std::vector<Term>> grown;
        for (const auto& t : tuples)
          for (const auto& arg : prev) {
            auto t2 = t;
            t2.push_back(arg);
            grown.push_back(std::move(t2));
          }
        tuples = std::move(grown);
      }
      for (auto& t : tuples) next.push_back(Term::app(f.name, std::move(t)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (const auto& t : next)
      if (std::find(all.begin(), all.end(), t) == all.end()) all.push_back(t);
    prev.insert(prev.end(), next.begin(), next.end());
    std::sort(prev.begin(), prev.end());
    prev.erase(std::unique(prev.begin(), prev.end()), prev.end());
  }
  return all;
}

std::vector<Atom> closed_atoms(const Universe& u) {
  std::vector<Term> terms = closed_terms(u);
  std::vector<Atom> out;
  for (const auto& p : u.preds) {
    std::vector<std::vector<Term>> tuples = {{}};
    for (int i = 0; i < p.arity; ++i) {
      std::vector<std::vector<Term>> grown;
      for (const auto& t : tuples)
        for (const auto& arg : terms) {
          auto t2 = t;
          t2.push_back(arg);
          grown.push_back(std::move(t2));
        }
      tuples = std::move(grown);
    }
    for (auto& t : tuples) out.push_back(Atom{p.name, std::move(t)});
  }
  return out;
}

}  // namespace inferon
