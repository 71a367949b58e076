#include "inferon/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace inferon {

namespace {

struct Token {
  enum class Kind { Ident, Nat, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_ = Token{Token::Kind::End, "", line_, col_};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\'')) {
        s += src_[pos_++];
        ++col_;
      }
      tok_ = Token{Token::Kind::Ident, s, tok_.line, tok_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        s += src_[pos_++];
        ++col_;
      }
      tok_ = Token{Token::Kind::Nat, s, tok_.line, tok_.col};
      return;
    }
    if (c == '"') {
      ++pos_;
      ++col_;
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        s += src_[pos_++];
        ++col_;
      }
      if (pos_ >= src_.size()) throw ParseError(tok_.line, tok_.col, "unterminated string");
      ++pos_;
      ++col_;
      tok_ = Token{Token::Kind::String, s, tok_.line, tok_.col};
      return;
    }
    // Multi-character punctuation first.
    static const char* multi[] = {"=>", "->", "|-", "|=", "~>"};
    for (const char* m : multi) {
      std::size_t n = std::char_traits<char>::length(m);
      if (src_.compare(pos_, n, m) == 0) {
        pos_ += n;
        col_ += static_cast<int>(n);
        tok_ = Token{Token::Kind::Punct, m, tok_.line, tok_.col};
        return;
      }
    }
    ++pos_;
    ++col_;
    tok_ = Token{Token::Kind::Punct, std::string(1, c), tok_.line, tok_.col};
    return;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& src, Model& m) : lex_(src), m_(m) {}

  void run() {
    while (lex_.peek().kind != Token::Kind::End) decl();
    validate();
  }

  FormulaRef formula_entry() {
    auto f = parse_formula();
    expect_end();
    return f;
  }

  InferonicAtom iatom_entry() {
    auto a = parse_iatom();
    expect_end();
    return a;
  }

  Term term_entry() {
    auto t = parse_term({});
    expect_end();
    return t;
  }

 private:
  Lexer lex_;
  Model& m_;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(lex_.peek().line, lex_.peek().col, msg);
  }

  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End) fail("trailing input");
  }

  bool at_punct(const std::string& p) {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }
  bool at_ident(const std::string& s) {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
  }
  void eat_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    lex_.next();
  }
  void eat_ident(const std::string& s) {
    if (!at_ident(s)) fail("expected '" + s + "'");
    lex_.next();
  }
  std::string ident() {
    if (lex_.peek().kind != Token::Kind::Ident) fail("expected identifier");
    return lex_.next().text;
  }
  int nat() {
    if (lex_.peek().kind != Token::Kind::Nat) fail("expected number");
    return std::stoi(lex_.next().text);
  }

  // ---- declarations ----

  void decl() {
    if (at_ident("const")) {
      lex_.next();
      do {
        m_.universe.constants.push_back(ident());
      } while (lex_.peek().kind == Token::Kind::Ident &&
               !is_decl_keyword(lex_.peek().text));
      return;
    }
    if (at_ident("fun")) {
      lex_.next();
      std::string n = ident();
      eat_punct("/");
      m_.universe.functions.push_back(FunSig{n, nat()});
      return;
    }
    if (at_ident("pred")) {
      lex_.next();
      std::string n = ident();
      eat_punct("/");
      m_.universe.preds.push_back(PredSig{n, nat()});
      return;
    }
    if (at_ident("depth")) {
      lex_.next();
      m_.universe.term_depth = nat();
      return;
    }
    if (at_ident("base")) {
      lex_.next();
      std::string n = ident();
      eat_punct("{");
      std::vector<BaseRule> rules;
      while (!at_punct("}")) rules.push_back(parse_rule());
      eat_punct("}");
      if (m_.universe.bases.count(n)) fail("base '" + n + "' declared twice");
      m_.universe.bases.emplace(n, Base::make(n, std::move(rules)));
      return;
    }
    if (at_ident("candidates")) {
      lex_.next();
      eat_punct("{");
      while (!at_punct("}")) m_.universe.candidates.push_back(parse_rule());
      eat_punct("}");
      return;
    }
    if (at_ident("site")) {
      lex_.next();
      std::string n = ident();
      eat_punct("{");
      std::vector<InferonicAtom> atoms;
      if (!at_punct("}")) {
        atoms.push_back(parse_iatom());
        while (at_punct(",")) {
          lex_.next();
          atoms.push_back(parse_iatom());
        }
      }
      eat_punct("}");
      if (m_.universe.sites.count(n)) fail("site '" + n + "' declared twice");
      m_.universe.sites.emplace(n, make_site(n, std::move(atoms)));
      return;
    }
    if (at_ident("agent")) {
      lex_.next();
      std::string n = ident();
      eat_punct("{");
      Agent a{n, {}};
      a.bases.push_back(named_base(base_name()));
      while (at_punct(",")) {
        lex_.next();
        a.bases.push_back(named_base(base_name()));
      }
      eat_punct("}");
      m_.universe.agents.emplace(n, std::move(a));
      return;
    }
    if (at_ident("morphism")) {
      parse_morphism();
      return;
    }
    if (at_ident("stock")) {
      lex_.next();
      std::string n = ident();
      eat_punct(":");
      BaseRef b = named_base(base_name());
      eat_punct("{");
      std::vector<Term> terms;
      if (!at_punct("}")) {
        terms.push_back(parse_term({}));
        while (at_punct(",")) {
          lex_.next();
          terms.push_back(parse_term({}));
        }
      }
      eat_punct("}");
      m_.stocks.emplace(n, Stock{n, std::move(terms), std::move(b)});
      return;
    }
    if (at_ident("channel")) {
      parse_channel();
      return;
    }
    if (at_ident("check")) {
      parse_check();
      return;
    }
    fail("expected a declaration");
  }

  static bool is_decl_keyword(const std::string& s) {
    static const std::set<std::string> kw = {"const", "fun",        "pred",    "depth",
                                             "base",  "candidates", "site",    "agent",
                                             "check", "morphism",   "stock",   "channel"};
    return kw.count(s) > 0;
  }

  BaseRef named_base(const std::string& n) {
    if (n == "0") return Base::empty_base();
    auto it = m_.universe.bases.find(n);
    if (it == m_.universe.bases.end()) fail("unresolved base '" + n + "'");
    return it->second;
  }

  // Base names are identifiers, except the empty base "0".
  std::string base_name() {
    if (lex_.peek().kind == Token::Kind::Nat && lex_.peek().text == "0") {
      lex_.next();
      return "0";
    }
    return ident();
  }

  // ---- rules and atoms ----

  BaseRule parse_rule() {
    std::vector<RulePremise> premises;
    while (!at_punct("=>")) {
      if (at_punct("(")) {
        lex_.next();
        std::vector<InferonicAtom> hyps;
        while (!at_punct("=>")) hyps.push_back(parse_iatom());
        eat_punct("=>");
        InferonicAtom c = parse_iatom();
        eat_punct(")");
        premises.push_back(RulePremise{std::move(hyps), std::move(c)});
      } else {
        premises.push_back(RulePremise{{}, parse_iatom()});
      }
    }
    eat_punct("=>");
    InferonicAtom concl = parse_iatom();
    eat_punct(".");
    return make_rule(std::move(premises), std::move(concl));
  }

  InferonicAtom parse_iatom() {
    eat_punct("<");
    Atom a = parse_atom({});
    eat_punct(",");
    Polarity p = parse_pol();
    eat_punct(">");
    if (!a.closed()) fail("open atom where a closed one is required");
    return make_iatom(std::move(a), p);
  }

  Polarity parse_pol() {
    if (lex_.peek().kind != Token::Kind::Nat) fail("expected polarity 0 or 1");
    int v = nat();
    if (v != 0 && v != 1) fail("polarity must be 0 or 1");
    return polarity_of(v);
  }

  Atom parse_atom(const std::vector<std::string>& scope) {
    std::string n = ident();
    std::vector<Term> args;
    if (at_punct("(")) {
      lex_.next();
      args.push_back(parse_term(scope));
      while (at_punct(",")) {
        lex_.next();
        args.push_back(parse_term(scope));
      }
      eat_punct(")");
    }
    auto arity = m_.universe.pred_arity(n);
    if (!arity) fail("unresolved predicate '" + n + "'");
    if (*arity != static_cast<int>(args.size()))
      fail("predicate '" + n + "' expects arity " + std::to_string(*arity));
    return Atom{std::move(n), std::move(args)};
  }

  Term parse_term(const std::vector<std::string>& scope) {
    std::string n = ident();
    if (at_punct("(")) {
      lex_.next();
      std::vector<Term> args;
      args.push_back(parse_term(scope));
      while (at_punct(",")) {
        lex_.next();
        args.push_back(parse_term(scope));
      }
      eat_punct(")");
      for (const auto& f : m_.universe.functions) {
        if (f.name == n) {
          if (f.arity != static_cast<int>(args.size()))
            fail("function '" + n + "' expects arity " + std::to_string(f.arity));
          return Term::app(n, std::move(args));
        }
      }
      fail("unresolved function symbol '" + n + "'");
    }
    for (const auto& v : scope)
      if (v == n) return Term::variable(n);
    for (const auto& c : m_.universe.constants)
      if (c == n) return Term::constant(n);
    fail("unresolved term '" + n + "' (not a constant or bound variable)");
  }

  // ---- formulas ----

  FormulaRef parse_formula() { return parse_implies({}); }

  FormulaRef parse_implies(std::vector<std::string> scope) {
    FormulaRef l = parse_or(scope);
    if (at_punct("->")) {
      lex_.next();
      return Formula::implies(std::move(l), parse_implies(scope));  // right associative
    }
    return l;
  }

  FormulaRef parse_or(std::vector<std::string>& scope) {
    FormulaRef l = parse_and(scope);
    while (at_punct("|")) {
      lex_.next();
      l = Formula::disj(std::move(l), parse_and(scope));
    }
    return l;
  }

  FormulaRef parse_and(std::vector<std::string>& scope) {
    FormulaRef l = parse_unary(scope);
    while (at_punct("&")) {
      lex_.next();
      l = Formula::conj(std::move(l), parse_unary(scope));
    }
    return l;
  }

  FormulaRef parse_unary(std::vector<std::string>& scope) {
    if (at_ident("bot")) {
      lex_.next();
      return Formula::bottom();
    }
    if (at_ident("all") || at_ident("ex")) {
      bool universal = lex_.next().text == "all";
      std::string var = ident();
      for (const auto& c : m_.universe.constants)
        if (c == var) fail("bound variable shadows constant '" + var + "'");
      eat_punct(".");
      scope.push_back(var);
      FormulaRef body = parse_unary(scope);
      scope.pop_back();
      return universal ? Formula::forall(var, std::move(body))
                       : Formula::exists(var, std::move(body));
    }
    if (at_ident("compound")) {
      lex_.next();
      eat_punct("<");
      FormulaRef body = parse_compound_body(scope);
      eat_punct("@");
      BaseRef b = named_base(base_name());
      eat_punct(",");
      Polarity p = parse_pol();
      eat_punct(">");
      return Formula::compound(std::move(body), std::move(b), p);
    }
    if (at_punct("[")) {
      lex_.next();
      std::string agent = ident();
      eat_punct("]");
      if (!m_.universe.agents.count(agent)) fail("unresolved agent '" + agent + "'");
      return Formula::box(agent, parse_unary(scope));
    }
    if (at_punct("(")) {
      lex_.next();
      FormulaRef f = parse_implies(scope);
      eat_punct(")");
      return f;
    }
    if (at_punct("<")) {
      lex_.next();
      // Either a diamond <agent> phi or an inferon <Atom @ Base, pol>.
      std::string n = ident();
      if (at_punct(">")) {
        lex_.next();
        if (!m_.universe.agents.count(n)) fail("unresolved agent '" + n + "'");
        return Formula::diamond(n, parse_unary(scope));
      }
      std::vector<Term> args;
      if (at_punct("(")) {
        lex_.next();
        args.push_back(parse_term(scope));
        while (at_punct(",")) {
          lex_.next();
          args.push_back(parse_term(scope));
        }
        eat_punct(")");
      }
      auto arity = m_.universe.pred_arity(n);
      if (!arity) fail("unresolved predicate '" + n + "'");
      if (*arity != static_cast<int>(args.size()))
        fail("predicate '" + n + "' expects arity " + std::to_string(*arity));
      Atom a{n, std::move(args)};
      eat_punct("@");
      BaseRef b = named_base(base_name());
      eat_punct(",");
      Polarity p = parse_pol();
      eat_punct(">");
      return Formula::inferon(std::move(a), std::move(b), p);
    }
    fail("expected a formula");
  }

  // Body of a compound inferon: connectives and quantifiers over bare atoms.
  FormulaRef parse_compound_body(std::vector<std::string>& scope) {
    return parse_body_implies(scope);
  }
  FormulaRef parse_body_implies(std::vector<std::string>& scope) {
    FormulaRef l = parse_body_or(scope);
    if (at_punct("->")) {
      lex_.next();
      return Formula::implies(std::move(l), parse_body_implies(scope));
    }
    return l;
  }
  FormulaRef parse_body_or(std::vector<std::string>& scope) {
    FormulaRef l = parse_body_and(scope);
    while (at_punct("|")) {
      lex_.next();
      l = Formula::disj(std::move(l), parse_body_and(scope));
    }
    return l;
  }
  FormulaRef parse_body_and(std::vector<std::string>& scope) {
    FormulaRef l = parse_body_unary(scope);
    while (at_punct("&")) {
      lex_.next();
      l = Formula::conj(std::move(l), parse_body_unary(scope));
    }
    return l;
  }
  FormulaRef parse_body_unary(std::vector<std::string>& scope) {
    if (at_ident("all") || at_ident("ex")) {
      bool universal = lex_.next().text == "all";
      std::string var = ident();
      eat_punct(".");
      scope.push_back(var);
      FormulaRef body = parse_body_unary(scope);
      scope.pop_back();
      return universal ? Formula::forall(var, std::move(body))
                       : Formula::exists(var, std::move(body));
    }
    if (at_punct("(")) {
      lex_.next();
      FormulaRef f = parse_body_implies(scope);
      eat_punct(")");
      return f;
    }
    return Formula::body_atom(parse_atom(scope));
  }

  // ---- flow declarations ----

  void parse_morphism() {
    eat_ident("morphism");
    std::string n = ident();
    eat_punct(":");
    BaseRef src = named_base(base_name());
    eat_punct("->");
    BaseRef tgt = named_base(base_name());
    BaseRef amb = Base::empty_base();
    if (at_ident("over")) {
      lex_.next();
      amb = named_base(base_name());
    }
    PreInferomorphism f;
    f.name = n;
    f.source = std::move(src);
    f.target = std::move(tgt);
    f.ambient = std::move(amb);
    eat_punct("{");
    while (!at_punct("}")) {
      if (at_ident("down")) {
        lex_.next();
        eat_punct("{");
        while (!at_punct("}")) {
          Term from = parse_term({});
          eat_punct("->");
          Term to = parse_term({});
          f.down.emplace(std::move(from), std::move(to));
          if (at_punct(",")) lex_.next();
        }
        eat_punct("}");
      } else if (at_ident("up")) {
        lex_.next();
        int arity = nat();
        eat_punct("{");
        while (!at_punct("}")) {
          std::string from = ident();
          eat_punct("->");
          std::string to = ident();
          auto a1 = m_.universe.pred_arity(from), a2 = m_.universe.pred_arity(to);
          if (!a1 || !a2) fail("morphism maps an undeclared predicate");
          if (*a1 != arity || *a2 != arity) fail("up map must preserve arity");
          f.up[arity][from] = to;
          if (at_punct(",")) lex_.next();
        }
        eat_punct("}");
      } else {
        fail("expected 'down' or 'up' inside morphism");
      }
    }
    eat_punct("}");
    m_.morphisms.emplace(n, std::move(f));
  }

  void parse_channel() {
    eat_ident("channel");
    std::string n = ident();
    eat_punct(":");
    std::string core_name = ident();
    auto core_it = m_.stocks.find(core_name);
    if (core_it == m_.stocks.end()) fail("unresolved stock '" + core_name + "'");
    StockChannel ch;
    ch.name = n;
    ch.core = core_it->second;
    eat_punct("{");
    while (!at_punct("}")) {
      std::string leg = ident();
      eat_punct(":");
      std::string stock_name = ident();
      auto sit = m_.stocks.find(stock_name);
      if (sit == m_.stocks.end()) fail("unresolved stock '" + stock_name + "'");
      auto mit = m_.morphisms.find(leg);
      if (mit == m_.morphisms.end()) fail("unresolved morphism '" + leg + "'");
      ch.leg_names.push_back(leg);
      ch.legs.emplace(leg, mit->second);
      ch.leg_stocks.emplace(leg, sit->second);
      if (at_punct(",")) lex_.next();
    }
    eat_punct("}");
    validate_channel(ch);
    m_.channels.emplace(n, std::move(ch));
  }

  void validate_channel(const StockChannel& ch) {
    for (const auto& leg : ch.leg_names) {
      const auto& f = ch.legs.at(leg);
      const auto& stock = ch.leg_stocks.at(leg);
      if (!base_equal(f.target, ch.core.base))
        fail("leg '" + leg + "' does not target the core base");
      for (const auto& t : ch.core.terms) {
        auto mapped = f.down_of(t);
        if (!mapped) fail("leg '" + leg + "' is undefined on core term " + term_key(t));
        bool in_stock = false;
        for (const auto& s : stock.terms)
          if (s == *mapped) in_stock = true;
        if (!in_stock) fail("leg '" + leg + "' maps outside its stock");
      }
      for (const auto& [from, to] : f.down) {
        bool in_core = false;
        for (const auto& c : ch.core.terms)
          if (c == from) in_core = true;
        if (!in_core) fail("leg '" + leg + "' has down entries outside the core");
      }
    }
  }

  // ---- checks ----

  void parse_check() {
    eat_ident("check");
    Check c;
    if (lex_.peek().kind != Token::Kind::String) fail("check needs a description string");
    c.description = lex_.next().text;
    eat_ident("expect");
    if (at_ident("true")) {
      lex_.next();
      c.expected = true;
    } else if (at_ident("false")) {
      lex_.next();
      c.expected = false;
    } else {
      fail("expected 'true' or 'false'");
    }
    eat_punct(":");
    if (at_ident("derive")) {
      lex_.next();
      c.kind = Check::Kind::Derive;
      c.base = parse_base_expr();
      if (at_ident("with")) {
        lex_.next();
        c.site = site_name();
      }
      eat_punct("|-");
      c.goal = parse_iatom();
    } else if (at_ident("support")) {
      lex_.next();
      c.kind = Check::Kind::Support;
      c.base = parse_base_expr();
      if (at_ident("at")) {
        lex_.next();
        c.site = site_name();
      }
      eat_punct("|=");
      c.formula = parse_formula();
    } else if (at_ident("sequent")) {
      lex_.next();
      c.kind = Check::Kind::Sequent;
      c.base = parse_base_expr();
      if (at_ident("at")) {
        lex_.next();
        c.site = site_name();
      }
      eat_punct("{");
      if (!at_punct("}")) {
        c.theta.push_back(parse_formula());
        while (at_punct(",")) {
          lex_.next();
          c.theta.push_back(parse_formula());
        }
      }
      eat_punct("}");
      eat_punct("|=");
      c.formula = parse_formula();
    } else if (at_ident("chu")) {
      lex_.next();
      c.kind = Check::Kind::Chu;
      c.morphism = morphism_name();
    } else if (at_ident("quasi")) {
      lex_.next();
      c.kind = Check::Kind::Quasi;
      c.morphism = morphism_name();
      if (at_ident("reachable")) {
        lex_.next();
        c.quasi_reachable = true;
      }
    } else if (at_ident("carries")) {
      lex_.next();
      c.kind = Check::Kind::Carries;
      c.channel = channel_name();
      eat_ident("via");
      c.leg_f = ident();
      c.leg_g = ident();
      eat_punct(":");
      auto [r, t, p1] = parse_applied_pred();
      eat_punct("~>");
      auto [s, t2, p2] = parse_applied_pred();
      if (p1 != p2) fail("carries requires one polarity on both sides");
      c.pred_r = r;
      c.term_f = t;
      c.pred_s = s;
      c.term_g = t2;
      c.pol = p1;
    } else if (at_ident("connected")) {
      lex_.next();
      c.kind = Check::Kind::Connected;
      c.channel = channel_name();
      eat_ident("via");
      c.leg_f = ident();
      c.leg_g = ident();
      eat_punct(":");
      c.term_f = parse_term({});
      eat_punct("~>");
      c.term_g = parse_term({});
    } else if (at_ident("consistent")) {
      lex_.next();
      c.kind = Check::Kind::Consistent;
      c.base = parse_base_expr();
      if (at_ident("with")) {
        lex_.next();
        c.site = site_name();
      }
    } else if (at_ident("constraint")) {
      lex_.next();
      c.kind = Check::Kind::Constraint;
      c.base = parse_base_expr();
      eat_punct(":");
      c.theta.push_back(parse_formula());
      eat_punct(",");
      c.theta.push_back(parse_formula());
      eat_punct("=>");
      c.formula = parse_formula();
    } else {
      fail("unknown check kind");
    }
    eat_punct(".");
    m_.checks.push_back(std::move(c));
  }

  std::string site_name() {
    std::string n = ident();
    if (!m_.universe.sites.count(n)) fail("unresolved site '" + n + "'");
    return n;
  }
  std::string morphism_name() {
    std::string n = ident();
    if (!m_.morphisms.count(n)) fail("unresolved morphism '" + n + "'");
    return n;
  }
  std::string channel_name() {
    std::string n = ident();
    if (!m_.channels.count(n)) fail("unresolved channel '" + n + "'");
    return n;
  }

  std::tuple<std::string, Term, Polarity> parse_applied_pred() {
    eat_punct("<");
    std::string p = ident();
    eat_punct("(");
    Term t = parse_term({});
    eat_punct(")");
    eat_punct(",");
    Polarity pol = parse_pol();
    eat_punct(">");
    auto a = m_.universe.pred_arity(p);
    if (!a || *a != 1) fail("carries needs a unary predicate");
    return {std::move(p), std::move(t), pol};
  }

  BaseRef parse_base_expr() {
    BaseRef b = named_base(base_name());
    while (at_punct("+")) {
      lex_.next();
      b = base_union(b, named_base(base_name()));
    }
    return b;
  }

  // ---- post-parse validation ----

  void validate() {
    // Every rule (in bases and the candidate pool) must be ground and within
    // the declared vocabulary over the universe's closed terms.
    auto check_iatom = [&](const InferonicAtom& a, const std::string& where) {
      if (!a.atom.closed()) throw ModelError("open atom in " + where);
      auto ar = m_.universe.pred_arity(a.atom.pred);
      if (!ar) throw ModelError("undeclared predicate in " + where);
    };
    auto check_rule = [&](const BaseRule& r, const std::string& where) {
      check_iatom(r.concl, where);
      for (const auto& p : r.premises) {
        check_iatom(p.concl, where);
        for (const auto& h : p.hyps) check_iatom(h, where);
      }
    };
    for (const auto& [n, b] : m_.universe.bases)
      for (const auto& r : b->rules()) check_rule(r, "base " + n);
    for (const auto& r : m_.universe.candidates) check_rule(r, "candidate pool");
    for (const auto& [n, s] : m_.universe.sites)
      for (const auto& a : s.atoms) check_iatom(a, "site " + n);
  }
};

std::string first_comment_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    if (line[i] == '#') {
      std::size_t j = line.find_first_not_of("# \t", i);
      return j == std::string::npos ? "" : line.substr(j);
    }
    break;
  }
  return {};
}

}  // namespace

Model parse_model(const std::string& text) {
  Model m;
  m.summary = first_comment_line(text);
  Parser p(text, m);
  p.run();
  return m;
}

Model parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

FormulaRef parse_formula_text(const std::string& text, const Model& m) {
  Model scratch = m;  // name resolution only; shares the underlying bases
  Parser p(text, scratch);
  return p.formula_entry();
}

InferonicAtom parse_iatom_text(const std::string& text, const Model& m) {
  Model scratch = m;
  Parser p(text, scratch);
  return p.iatom_entry();
}

Term parse_term_text(const std::string& text, const Model& m) {
  Model scratch = m;
  Parser p(text, scratch);
  return p.term_entry();
}

BaseRef resolve_base_expr(const std::string& expr, const Model& m) {
  std::string trimmed;
  for (char ch : expr)
    if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
  if (trimmed.empty()) return Base::empty_base();
  BaseRef out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw ModelError("malformed base expression: " + expr);
    BaseRef b;
    if (cur == "0") {
      b = Base::empty_base();
    } else {
      auto it = m.universe.bases.find(cur);
      if (it == m.universe.bases.end()) throw ModelError("unresolved base '" + cur + "'");
      b = it->second;
    }
    out = out ? base_union(out, b) : b;
    cur.clear();
  };
  for (char ch : trimmed) {
    if (ch == '+') {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return out;
}

}  // namespace inferon
