#include "inferon/print.hpp"

namespace inferon {

std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Constant:
    case Term::Kind::Variable: return t.name;
    case Term::Kind::App: {
      std::string s = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ",";
        s += print(t.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

std::string print(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string s = a.pred + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += print(a.args[i]);
  }
  return s + ")";
}

std::string print(Polarity p) { return p == Polarity::Assertion ? "1" : "0"; }

std::string print(const InferonicAtom& ia) {
  std::string s = "<" + print(ia.atom) + "," + print(ia.pol) + ">";
  if (ia.ext) s += "@" + ia.ext->name();
  return s;
}

std::string print(const RulePremise& p) {
  if (p.hyps.empty()) return print(p.concl);
  std::string s = "(";
  for (const auto& h : p.hyps) s += print(h) + " ";
  return s + "=> " + print(p.concl) + ")";
}

std::string print(const BaseRule& r) {
  std::string s;
  for (const auto& p : r.premises) s += print(p) + " ";
  return s + "=> " + print(r.concl) + ".";
}

std::string print(const Base& b) {
  std::string s = "base " + b.name() + " {";
  if (b.rules().empty()) return s + " }";
  s += "\n";
  for (const auto& r : b.rules()) s += "  " + print(r) + "\n";
  return s + "}";
}

std::string print(const Site& s) {
  std::string out = "site " + s.name + " {";
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    out += (i ? ", " : " ") + print(s.atoms[i]);
  }
  return out + " }";
}

namespace {

// Binding strength: -> is 1 (right assoc), | is 2, & is 3, prefixes are 4.
int prec_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

std::string print_formula(const FormulaRef& f, int parent_prec) {
  int p = prec_of(f->kind());
  std::string s;
  switch (f->kind()) {
    case Formula::Kind::Inferon:
      s = "<" + print(f->atom()) + " @ " + f->base()->name() + ", " + print(f->pol()) + ">";
      break;
    case Formula::Kind::Compound:
      s = "compound <" + print_formula(f->body(), 0) + " @ " + f->base()->name() + ", " +
          print(f->pol()) + ">";
      break;
    case Formula::Kind::BodyAtom: s = print(f->atom()); break;
    case Formula::Kind::Bottom: s = "bot"; break;
    case Formula::Kind::And:
      s = print_formula(f->lhs(), p) + " & " + print_formula(f->rhs(), p + 1);
      break;
    case Formula::Kind::Or:
      s = print_formula(f->lhs(), p) + " | " + print_formula(f->rhs(), p + 1);
      break;
    case Formula::Kind::Implies:
      s = print_formula(f->lhs(), p + 1) + " -> " + print_formula(f->rhs(), p);
      break;
    case Formula::Kind::ForAll: s = "all " + f->label() + ". " + print_formula(f->body(), p); break;
    case Formula::Kind::Exists: s = "ex " + f->label() + ". " + print_formula(f->body(), p); break;
    case Formula::Kind::Box: s = "[" + f->label() + "] " + print_formula(f->body(), p); break;
    case Formula::Kind::Diamond: s = "<" + f->label() + "> " + print_formula(f->body(), p); break;
  }
  if (p < parent_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print(const FormulaRef& f) { return print_formula(f, 0); }

std::string print(const Universe& u) {
  std::string s;
  if (!u.constants.empty()) {
    s += "const";
    for (const auto& c : u.constants) s += " " + c;
    s += "\n";
  }
  for (const auto& f : u.functions) s += "fun " + f.name + "/" + std::to_string(f.arity) + "\n";
  for (const auto& p : u.preds) s += "pred " + p.name + "/" + std::to_string(p.arity) + "\n";
  if (u.term_depth > 0) s += "depth " + std::to_string(u.term_depth) + "\n";
  for (const auto& [name, b] : u.bases) {
    s += print(*b) + "\n";
  }
  for (const auto& [name, site] : u.sites) s += print(site) + "\n";
  for (const auto& [name, agent] : u.agents) {
    s += "agent " + name + " {";
    for (std::size_t i = 0; i < agent.bases.size(); ++i)
      s += (i ? ", " : " ") + agent.bases[i]->name();
    s += " }\n";
  }
  if (!u.candidates.empty()) {
    s += "candidates {\n";
    for (const auto& r : u.candidates) s += "  " + print(r) + "\n";
    s += "}\n";
  }
  return s;
}

std::string formula_key(const FormulaRef& f) {
  switch (f->kind()) {
    case Formula::Kind::Inferon:
      return "<" + atom_key(f->atom()) + "@{" + f->base()->rules_key() + "}," +
             print(f->pol()) + ">";
    case Formula::Kind::Compound:
      return "c<" + formula_key(f->body()) + "@{" + f->base()->rules_key() + "}," +
             print(f->pol()) + ">";
    case Formula::Kind::BodyAtom: return atom_key(f->atom());
    case Formula::Kind::Bottom: return "bot";
    case Formula::Kind::And: return "(& " + formula_key(f->lhs()) + " " + formula_key(f->rhs()) + ")";
    case Formula::Kind::Or: return "(| " + formula_key(f->lhs()) + " " + formula_key(f->rhs()) + ")";
    case Formula::Kind::Implies:
      return "(-> " + formula_key(f->lhs()) + " " + formula_key(f->rhs()) + ")";
    case Formula::Kind::ForAll: return "(all " + f->label() + " " + formula_key(f->body()) + ")";
    case Formula::Kind::Exists: return "(ex " + f->label() + " " + formula_key(f->body()) + ")";
    case Formula::Kind::Box: return "(box " + f->label() + " " + formula_key(f->body()) + ")";
    case Formula::Kind::Diamond: return "(dia " + f->label() + " " + formula_key(f->body()) + ")";
  }
  return {};
}

}  // namespace inferon
