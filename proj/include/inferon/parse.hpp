// Line-oriented DSL for models and scenario files. Besides the declaration
// forms (const/fun/pred/base/site/agent/candidates/depth) the parser accepts
// morphism/stock/channel declarations and `check` lines so that scenario
// corpora ship as plain text. Everything resolves at parse time; names must
// be declared before use.
#pragma once

#include <string>
#include <vector>

#include "inferon/flow.hpp"
#include "inferon/syntax.hpp"

namespace inferon {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) + ": " +
                           msg),
        line(l),
        column(c) {}
};

struct Check {
  enum class Kind {
    Derive,      // derive BASEEXPR [with SITE] |- IATOM
    Support,     // support BASEEXPR [at SITE] |= FORMULA
    Sequent,     // sequent BASEEXPR [at SITE] { F, ... } |= FORMULA
    Chu,         // chu MORPHISM
    Quasi,       // quasi MORPHISM [reachable]
    Carries,     // carries CHANNEL via LEG LEG : <R(t),b> ~> <S(t),b>
    Connected,   // connected CHANNEL via LEG LEG : t ~> t
    Consistent,  // consistent BASEEXPR
    Constraint,  // constraint BASEEXPR : INFERON , INFERON => INFERON
  };

  std::string description;
  bool expected = true;
  Kind kind = Kind::Derive;

  BaseRef base;
  std::optional<std::string> site;  // name into universe.sites
  std::vector<FormulaRef> theta;
  FormulaRef formula;
  InferonicAtom goal;
  std::string morphism, channel, leg_f, leg_g;
  std::string pred_r, pred_s;
  Term term_f, term_g;
  Polarity pol = Polarity::Assertion;
  bool quasi_reachable = false;
};

struct Model {
  Universe universe;
  std::map<std::string, PreInferomorphism> morphisms;
  std::map<std::string, Stock> stocks;
  std::map<std::string, StockChannel> channels;
  std::vector<Check> checks;
  std::string summary;  // first comment line of the file, if any
};

Model parse_model(const std::string& text);
Model parse_model_file(const std::string& path);

// Standalone entry points used by the CLI; names resolve against the model.
FormulaRef parse_formula_text(const std::string& text, const Model& m);
InferonicAtom parse_iatom_text(const std::string& text, const Model& m);
Term parse_term_text(const std::string& text, const Model& m);
// "A+B" unions named bases; "0" is the empty base.
BaseRef resolve_base_expr(const std::string& expr, const Model& m);

}  // namespace inferon
