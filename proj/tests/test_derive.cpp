#include <doctest.h>

#include "gen.hpp"
#include "inferon/derive.hpp"
#include "inferon/flow.hpp"
#include "inferon/print.hpp"
#include "oracle.hpp"

using namespace inferon;
using inferon::testing::BruteOracle;
using inferon::testing::Gen;

namespace {

InferonicAtom ia(const std::string& p, int pol) {
  return make_iatom(Atom{p, {}}, polarity_of(pol));
}

Site ctx(std::vector<InferonicAtom> atoms) { return make_site("", std::move(atoms)); }

}  // namespace

TEST_CASE("smoke-fire derivability") {
  Base b("B", {make_rule({RulePremise{{}, ia("P1", 1)}}, ia("P2", 1)), make_axiom(ia("P1", 1))});
  CHECK(derives(b, ctx({}), ia("P2", 1)));
  CHECK(derives(b, ctx({}), ia("P1", 1)));
  CHECK_FALSE(derives(b, ctx({}), ia("P2", 0)));
}

TEST_CASE("Ref: any context member is derivable") {
  Base b("B", {});
  CHECK(derives(b, ctx({ia("x", 1)}), ia("x", 1)));
  CHECK_FALSE(derives(b, ctx({ia("x", 1)}), ia("x", 0)));
}

TEST_CASE("level-2 rule discharges its hypothesis") {
  BaseRule lvl2 = make_rule({RulePremise{{ia("p", 1)}, ia("q", 1)}}, ia("r", 1));
  BaseRule lvl1 = make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1));
  Base with("B", {lvl2, lvl1});
  Base without("B", {lvl2});
  CHECK(derives(with, ctx({}), ia("r", 1)));
  CHECK_FALSE(derives(without, ctx({}), ia("r", 1)));
  // The hypothesis stays local to its premise: p itself is not derivable.
  CHECK_FALSE(derives(with, ctx({}), ia("p", 1)));
}

TEST_CASE("derivation trees replay and agree with derives") {
  BaseRule constraint = make_rule({RulePremise{{}, ia("P1", 1)}}, ia("P2", 1));
  Base b("B", {constraint, make_axiom(ia("P1", 1))});

  auto tree = derivation(b, ctx({}), ia("P2", 1));
  REQUIRE(tree.has_value());
  CHECK(tree->step == DerivationTree::Step::App);
  CHECK(rule_key(tree->rule) == rule_key(constraint));
  REQUIRE(tree->subs.size() == 1);
  CHECK(tree->subs[0].step == DerivationTree::Step::App);  // the axiom
  CHECK(replay(*tree, b, ctx({})));

  auto ref = derivation(b, ctx({ia("z", 1)}), ia("z", 1));
  REQUIRE(ref.has_value());
  CHECK(ref->step == DerivationTree::Step::Ref);
  CHECK(ref->subs.empty());

  CHECK_FALSE(derivation(Base("E", {}), ctx({}), ia("q", 1)).has_value());
}

TEST_CASE("derivation extraction is deterministic") {
  BaseRule r1 = make_rule({RulePremise{{}, ia("a", 1)}}, ia("g", 1));
  BaseRule r2 = make_rule({RulePremise{{}, ia("b", 1)}}, ia("g", 1));
  Base b("B", {make_axiom(ia("a", 1)), make_axiom(ia("b", 1)), r1, r2});
  auto t1 = derivation(b, ctx({}), ia("g", 1));
  auto t2 = derivation(b, ctx({}), ia("g", 1));
  REQUIRE(t1.has_value());
  REQUIRE(t2.has_value());
  CHECK(*t1 == *t2);
  CHECK(replay(*t1, b, ctx({})));
}

TEST_CASE("cut grafts a derivation onto context leaves") {
  Base b("B", {make_axiom(ia("p", 1)), make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))});
  auto d1 = derivation(b, ctx({}), ia("p", 1));
  REQUIRE(d1.has_value());

  // d2 = Ref(p): the cut is d1 itself.
  auto d2 = derivation(b, ctx({ia("p", 1)}), ia("p", 1));
  REQUIRE(d2.has_value());
  CHECK(cut(*d1, *d2, b) == *d1);

  // d2 = App over Ref(p): the leaf is replaced.
  auto d3 = derivation(b, ctx({ia("p", 1)}), ia("q", 1));
  REQUIRE(d3.has_value());
  auto out = cut(*d1, *d3, b);
  CHECK(out.conclusion == ia("q", 1));
  CHECK(replay(out, b, ctx({})));
}

TEST_CASE("cut on random instances validates by replay") {
  Gen gen(2024);
  std::vector<std::string> letters = {"p", "q", "r"};
  int done = 0;
  for (int round = 0; round < 600 && done < 200; ++round) {
    Base b("B", gen.rules(letters, 3, 2, 1));
    InferonicAtom p = gen.iatom(letters);
    Site s1 = gen.site(letters, 2);
    auto d1 = derivation(b, s1, p);
    if (!d1) continue;
    Site s2 = site_union(gen.site(letters, 2), ctx({p}));
    InferonicAtom q = gen.iatom(letters);
    auto d2 = derivation(b, s2, q);
    if (!d2) continue;
    auto grafted = cut(*d1, *d2, b);
    CHECK(grafted.conclusion == q);
    Site joint = site_union(s1, site_difference(s2, ctx({p})));
    CHECK(replay(grafted, b, joint));
    ++done;
  }
  CHECK(done >= 50);
}

TEST_CASE("consistency") {
  Universe u;
  u.preds = {{"p", 0}};
  CHECK(consistent(Base("E", {}), u));
  Base clash("C", {make_axiom(ia("p", 0)), make_axiom(ia("p", 1))});
  CHECK_FALSE(consistent(clash, u));
  Base fine("F", {make_axiom(ia("p", 1))});
  CHECK(consistent(fine, u));
}

TEST_CASE("monotonicity in base and context") {
  Gen gen(77);
  std::vector<std::string> letters = {"p", "q", "r"};
  for (int round = 0; round < 300; ++round) {
    auto rules = gen.rules(letters, 3, 2, 1);
    auto extra = gen.rules(letters, 2, 2, 1);
    Base small("B", rules);
    auto all_rules = rules;
    all_rules.insert(all_rules.end(), extra.begin(), extra.end());
    Base big("C", all_rules);
    Site s_small = gen.site(letters, 2);
    Site s_big = site_union(s_small, gen.site(letters, 2));
    InferonicAtom goal = gen.iatom(letters);
    if (derives(small, s_small, goal)) {
      CHECK(derives(big, s_big, goal));
    }
  }
}

TEST_CASE("site/base equivalence via base_of") {
  Gen gen(4242);
  std::vector<std::string> letters = {"p", "q", "r"};
  for (int round = 0; round < 300; ++round) {
    Base b("B", gen.rules(letters, 3, 2, 1));
    Site s = gen.site(letters, 3);
    InferonicAtom goal = gen.iatom(letters);
    BaseRef joined = base_union(std::make_shared<Base>(b), base_of(s));
    CHECK(derives(b, s, goal) == derives(*joined, ctx({}), goal));
  }
}

TEST_CASE("a tree exists exactly when the judgment holds") {
  Gen gen(3434);
  std::vector<std::string> letters = {"p", "q", "r"};
  for (int round = 0; round < 300; ++round) {
    Base b("B", gen.rules(letters, 3, 2, 1));
    Site s = gen.site(letters, 2);
    InferonicAtom goal = gen.iatom(letters);
    auto tree = derivation(b, s, goal);
    CHECK(derives(b, s, goal) == tree.has_value());
    if (tree) CHECK(replay(*tree, b, s));
  }
}

TEST_CASE("oracle agreement on random instances with wide rules") {
  Gen gen(99);
  std::vector<std::string> letters = {"p", "q", "r", "s"};
  std::vector<InferonicAtom> alphabet;
  for (const auto& l : letters) {
    alphabet.push_back(ia(l, 0));
    alphabet.push_back(ia(l, 1));
  }
  for (int round = 0; round < 250; ++round) {
    auto rules = gen.rules(letters, 4, 3, 2);
    Base b("B", rules);
    BruteOracle oracle(alphabet, b.rules());
    Site s = gen.site(letters, 3);
    InferonicAtom goal = gen.iatom(letters);
    CHECK(derives(b, s, goal) == oracle.derives(s.atoms, goal));
  }
}

TEST_CASE("extended atoms delegate to the annotated base") {
  auto ann = Base::make("P", {make_axiom(ia("p", 1))});
  InferonicAtom ext = make_extended_iatom(Atom{"p", {}}, Polarity::Assertion, ann);

  // <p,1>_P is derivable in the empty base because P derives <p,1>.
  CHECK(derives(Base("E", {}), ctx({}), ext));
  // A rule concluding the extended atom makes the plain atom derivable in
  // any base containing the annotation.
  Base with_rule("B", {make_rule({}, ext)});
  BaseRef joined = base_union(std::make_shared<Base>(with_rule), ann);
  CHECK(derives(*joined, ctx({}), ia("p", 1)));
  // An annotation with no facts behind it stays underivable.
  auto other = Base::make("Q", {make_axiom(ia("z", 1))});
  CHECK_FALSE(derives(Base("E", {}), ctx({}),
                      make_extended_iatom(Atom{"q", {}}, Polarity::Assertion, other)));
  // Annotations with an empty base normalize to the plain atom.
  CHECK(make_extended_iatom(Atom{"p", {}}, Polarity::Assertion, Base::empty_base()) == ia("p", 1));
}
