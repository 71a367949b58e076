// Pretty-printer for the surface syntax. parse(print(x)) == x for every
// value expressible in the grammar.
#pragma once

#include <string>

#include "inferon/syntax.hpp"

namespace inferon {

std::string print(const Term& t);
std::string print(const Atom& a);
std::string print(Polarity p);
std::string print(const InferonicAtom& ia);  // extended atoms print as <P,b>@name
std::string print(const RulePremise& p);
std::string print(const BaseRule& r);
std::string print(const Base& b);            // full "base N { ... }" declaration
std::string print(const Site& s);
std::string print(const FormulaRef& f);      // minimal parentheses
std::string print(const Universe& u);        // full model text

// Stable identity key for memo tables; distinguishes structurally distinct
// bases even when names coincide.
std::string formula_key(const FormulaRef& f);

}  // namespace inferon
