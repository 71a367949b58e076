#include <doctest.h>

#include "gen.hpp"
#include "inferon/parse.hpp"
#include "inferon/print.hpp"
#include "inferon/syntax.hpp"

using namespace inferon;
using inferon::testing::Gen;

namespace {

Model base_model(const std::string& extra = "") {
  return parse_model("const a b\nfun f/1\npred P/1\npred p/0\npred q/0\npred r/0\ndepth 1\n" +
                     extra);
}

}  // namespace

TEST_CASE("parse the declaration forms") {
  Model m = parse_model(
      "# a little model\n"
      "const a b\n"
      "pred P1/0\npred P2/0\npred R/1\n"
      "base B { <P1,1> => <P2,1>. }\n"
      "base E { }\n"
      "base N { (<P1,1> => <P2,1>) => <R(a),1>. }\n"
      "site S1 { <R(a),1>, <R(b),1> }\n"
      "agent ag { B, N }\n"
      "candidates { => <P1,1>. }\n");
  CHECK(m.summary == "a little model");
  CHECK(m.universe.bases.at("B")->rules().size() == 1);
  CHECK(m.universe.bases.at("B")->rules()[0].level() == 1);
  CHECK(m.universe.bases.at("E")->rules().empty());
  CHECK(m.universe.bases.at("N")->rules()[0].level() == 2);
  CHECK(m.universe.sites.at("S1").atoms.size() == 2);
  CHECK(m.universe.agents.at("ag").bases.size() == 2);
  CHECK(m.universe.candidates.size() == 1);
}

TEST_CASE("parse errors carry positions and reasons") {
  CHECK_THROWS_AS(parse_model("base B { <P1,1> => <P2,1>. }"), ParseError);  // undeclared preds
  CHECK_THROWS_AS(parse_model("pred P/1\nconst a\nbase B { => <P(a,a),1>. }"), ParseError);
  CHECK_THROWS_AS(parse_model("pred p/0\nbase B { => <p,1> }"), ParseError);  // missing dot
  CHECK_THROWS_AS(parse_model("pred P/1\nbase B { => <P(x),1>. }"), ParseError);  // open atom
  CHECK_THROWS_WITH_AS(parse_model("pred p/0\nsite S { <q,1> }"),
                       doctest::Contains("unresolved"), ParseError);
  try {
    parse_model("pred p/0\nbase B {\n  => <p,2>.\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("printer round-trips the declaration shapes") {
  Model m = base_model(
      "base B { <p,1> => <q,1>. }\n"
      "base N { (<p,1> => <q,1>) => <r,1>. }\n"
      "site S1 { <P(a),1>, <P(b),1> }\n");
  // base round trip
  std::string btxt = print(*m.universe.bases.at("B"));
  CHECK(btxt.find("<p,1> => <q,1>.") != std::string::npos);
  Model m2 = parse_model("pred p/0\npred q/0\n" + btxt);
  CHECK(m2.universe.bases.at("B")->same_rules(*m.universe.bases.at("B")));
  // inferon print form
  auto f = parse_formula_text("<q @ B, 1>", m);
  CHECK(print(f) == "<q @ B, 1>");
  // site round trip
  std::string stxt = print(m.universe.sites.at("S1"));
  CHECK(stxt == "site S1 { <P(a),1>, <P(b),1> }");
}

TEST_CASE("formula parse/print round trip") {
  Model m = base_model("base B { <p,1> => <q,1>. }\nagent ag { B }\n");
  const char* samples[] = {
      "<p @ B, 1>",
      "bot",
      "<p @ 0, 1> & <q @ B, 0>",
      "<p @ B, 1> | bot",
      "<p @ B, 1> -> <q @ B, 1> -> <r @ B, 1>",
      "(<p @ B, 1> -> <q @ B, 1>) -> <r @ B, 1>",
      "all x. <P(x) @ B, 1>",
      "ex x. (<P(x) @ B, 1> & <p @ B, 0>)",
      "[ag] <p @ B, 1>",
      "<ag> (<p @ B, 1> | <q @ B, 1>)",
      "compound <p & q @ B, 1>",
      "compound <all x. P(x) @ B, 0>",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    auto f = parse_formula_text(s, m);
    auto g = parse_formula_text(print(f), m);
    CHECK(formula_equal(f, g));
  }
}

TEST_CASE("random formulas round trip through the printer") {
  Model m = base_model("base B { <p,1> => <q,1>. }\n");
  Gen gen(5151);
  std::vector<FormulaRef> pool = {
      parse_formula_text("<p @ B, 1>", m),
      parse_formula_text("<q @ 0, 0>", m),
      parse_formula_text("<P(a) @ B, 1>", m),
      parse_formula_text("<P(f(b)) @ B, 0>", m),
  };
  for (int i = 0; i < 300; ++i) {
    auto f = gen.formula(pool, 4);
    auto g = parse_formula_text(print(f), m);
    CHECK(formula_equal(f, g));
  }
}

TEST_CASE("closed terms enumerate to the depth bound") {
  Universe u;
  u.constants = {"a", "b"};
  CHECK(closed_terms(u).size() == 2);

  Universe u2;
  u2.constants = {"a"};
  u2.functions = {{"f", 1}};
  u2.term_depth = 1;
  auto ts = closed_terms(u2);
  REQUIRE(ts.size() == 2);
  CHECK(print(ts[0]) == "a");
  CHECK(print(ts[1]) == "f(a)");

  Universe u3;
  u3.constants = {"p", "t", "h", "o", "a"};
  CHECK(closed_terms(u3).size() == 5);

  Universe u4;
  u4.constants = {"a"};
  u4.functions = {{"f", 1}};
  u4.term_depth = 2;
  CHECK(closed_terms(u4).size() == 3);  // a, f(a), f(f(a))
}

TEST_CASE("gamma follows the complexity recursion") {
  Model m = base_model("base B { <p,1> => <q,1>. }\nagent ag { B }\n");
  auto inferon = parse_formula_text("<p @ B, 1>", m);
  CHECK(gamma(inferon) == 1);
  CHECK(gamma(Formula::bottom()) == 1);
  CHECK(gamma(parse_formula_text("ex x. <P(x) @ B, 1>", m)) == 3);
  CHECK(gamma(parse_formula_text("<p @ B, 1> & <q @ B, 1>", m)) == 3);
  CHECK(gamma(parse_formula_text("all x. <P(x) @ B, 1>", m)) == 2);
  CHECK(gamma(parse_formula_text("<p @ B, 1> -> <q @ B, 0>", m)) == 3);
  CHECK_THROWS_AS(gamma(parse_formula_text("[ag] <p @ B, 1>", m)), FragmentError);
}

TEST_CASE("gamma strictly decreases into subformulas") {
  Model m = base_model("base B { <p,1> => <q,1>. }\n");
  Gen gen(31337);
  std::vector<FormulaRef> pool = {parse_formula_text("<p @ B, 1>", m),
                                  parse_formula_text("<q @ 0, 1>", m)};
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(pool, 4);
    switch (f->kind()) {
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        CHECK(gamma(f) > gamma(f->lhs()));
        CHECK(gamma(f) > gamma(f->rhs()));
        break;
      default: break;
    }
    // the pair complexity dominates each antecedent member
    std::vector<FormulaRef> theta = {pool[0], f};
    CHECK(gamma_pair(theta, pool[1]) > gamma(f));
    CHECK(gamma_pair(theta, pool[1]) > gamma(pool[1]));
  }
}

TEST_CASE("set laws for sites and base unions") {
  Gen gen(808);
  std::vector<std::string> letters = {"p", "q", "r"};
  for (int i = 0; i < 100; ++i) {
    Site a = gen.site(letters, 3), b = gen.site(letters, 3), c = gen.site(letters, 3);
    CHECK(site_equal(site_union(a, a), a));
    CHECK(site_equal(site_union(a, b), site_union(b, a)));
    CHECK(site_equal(site_union(site_union(a, b), c), site_union(a, site_union(b, c))));
    auto rules_a = gen.rules(letters, 2, 1, 1);
    auto rules_b = gen.rules(letters, 2, 1, 1);
    auto ba = Base::make("A", rules_a);
    auto bb = Base::make("B", rules_b);
    CHECK(base_equal(base_union(ba, ba), ba));
    CHECK(base_equal(base_union(ba, bb), base_union(bb, ba)));
  }
}

TEST_CASE("union base names are canonical") {
  auto a = Base::make("B", {});
  auto b = Base::make("A", {make_axiom(make_iatom(Atom{"x", {}}, Polarity::Assertion))});
  auto c = Base::make("C", {make_axiom(make_iatom(Atom{"y", {}}, Polarity::Assertion))});
  CHECK(base_union(base_union(b, c), b)->name() == "A+C");
  CHECK(base_union(c, b)->name() == base_union(b, c)->name());
  (void)a;
}

TEST_CASE("compound expansion follows the polarity table") {
  Model m = base_model("base B { <p,1> => <q,1>. }\n");
  auto check_expands = [&](const std::string& in, const std::string& out) {
    CAPTURE(in);
    auto f = parse_formula_text(in, m);
    auto e = expand_compound(f);
    CHECK(formula_equal(e, parse_formula_text(out, m)));
  };
  check_expands("compound <p & q @ B, 1>", "<p @ B, 1> & <q @ B, 1>");
  check_expands("compound <p & q @ B, 0>", "<p @ B, 0> | <q @ B, 0>");
  check_expands("compound <p | q @ B, 1>", "<p @ B, 1> | <q @ B, 1>");
  check_expands("compound <p | q @ B, 0>", "<p @ B, 0> & <q @ B, 0>");
  check_expands("compound <p -> q @ B, 1>", "<p @ B, 1> -> <q @ B, 1>");
  check_expands("compound <p -> q @ B, 0>", "<p @ B, 1> & <q @ B, 0>");
  check_expands("compound <all x. P(x) @ B, 1>", "all x. <P(x) @ B, 1>");
  check_expands("compound <all x. P(x) @ B, 0>", "ex x. <P(x) @ B, 0>");
  check_expands("compound <ex x. P(x) @ B, 1>", "ex x. <P(x) @ B, 1>");
  check_expands("compound <ex x. P(x) @ B, 0>", "all x. <P(x) @ B, 0>");
  // atomic body is a fixed point
  check_expands("compound <p @ B, 0>", "<p @ B, 0>");
  // nested bodies expand recursively
  check_expands("compound <p & (q | r) @ B, 0>", "<p @ B, 0> | (<q @ B, 0> & <r @ B, 0>)");
}

TEST_CASE("substitution respects binder shadowing") {
  Model m = base_model("");
  auto f = parse_formula_text("ex x. (<P(x) @ 0, 1> & all x. <P(x) @ 0, 0>)", m);
  auto body = f->body();  // x free here
  auto g = formula_substitute(body, "x", Term::constant("a"));
  CHECK(print(g) == "<P(a) @ 0, 1> & all x. <P(x) @ 0, 0>");
}
