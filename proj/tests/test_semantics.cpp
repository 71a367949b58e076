#include <doctest.h>

#include "gen.hpp"
#include "inferon/derive.hpp"
#include "inferon/flow.hpp"
#include "inferon/parse.hpp"
#include "inferon/print.hpp"
#include "inferon/semantics.hpp"

using namespace inferon;
using inferon::testing::Gen;

namespace {

Query mk(const Universe& u, BaseRef b, FormulaRef f) {
  Query q;
  q.universe = &u;
  q.base = std::move(b);
  q.consequent = std::move(f);
  return q;
}

// Universe over nullary letters whose candidate pool contains every
// vocabulary axiom: the finitized relations then agree with their site/base
// bridge forms, which several properties below rely on.
Universe closure_universe(const std::vector<std::string>& letters,
                          std::vector<BaseRule> extra_candidates = {}) {
  Universe u;
  for (const auto& l : letters) u.preds.push_back({l, 0});
  for (const auto& l : letters) {
    u.candidates.push_back(make_axiom(make_iatom(Atom{l, {}}, Polarity::Denial)));
    u.candidates.push_back(make_axiom(make_iatom(Atom{l, {}}, Polarity::Assertion)));
  }
  for (auto& r : extra_candidates) u.candidates.push_back(std::move(r));
  return u;
}

InferonicAtom ia(const std::string& p, int pol) {
  return make_iatom(Atom{p, {}}, polarity_of(pol));
}

}  // namespace

TEST_CASE("extensions enumerate the candidate powerset") {
  Universe u;
  u.preds = {{"p", 0}, {"q", 0}};
  auto b = Base::make("B", {make_axiom(ia("p", 1))});

  Evaluator ev0(u);
  CHECK(ev0.extensions(b).size() == 1);  // no candidates: just the base

  u.candidates = {make_axiom(ia("q", 1))};
  Evaluator ev1(u);
  CHECK(ev1.extensions(b).size() == 2);

  u.candidates = {make_axiom(ia("q", 1)), make_axiom(ia("q", 0)),
                  make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))};
  Evaluator ev3(u);
  CHECK(ev3.extensions(b).size() == 8);

  // A candidate already in the base deduplicates.
  u.candidates = {make_axiom(ia("p", 1))};
  Evaluator ev_dup(u);
  CHECK(ev_dup.extensions(b).size() == 1);
}

TEST_CASE("atomic support is derivability in the joined base") {
  Universe u;
  u.preds = {{"P1", 0}, {"P2", 0}};
  auto b = Base::make("B", {make_rule({RulePremise{{}, ia("P1", 1)}}, ia("P2", 1))});
  auto p1 = Base::make("P1b", {make_axiom(ia("P1", 1))});
  Evaluator ev(u);
  CHECK(ev.supports(mk(u, b, Formula::inferon(Atom{"P2", {}}, p1, Polarity::Assertion))).verdict);
  CHECK_FALSE(
      ev.supports(mk(u, p1, Formula::inferon(Atom{"P2", {}}, p1, Polarity::Assertion))).verdict);
  // atomic leaves reduce to derivability even when candidates exist
  u.candidates = {make_axiom(ia("P2", 1))};
  Evaluator ev2(u);
  CHECK_FALSE(
      ev2.supports(mk(u, p1, Formula::inferon(Atom{"P2", {}}, p1, Polarity::Assertion))).verdict);
}

TEST_CASE("bottom fails when some inferon is unsupported") {
  Universe u;
  u.preds = {{"p", 0}};
  Evaluator ev(u);
  auto j = ev.supports(mk(u, Base::empty_base(), Formula::bottom()));
  CHECK_FALSE(j.verdict);
  CHECK(!j.witness.empty());
}

TEST_CASE("agent modalities quantify over the catalog") {
  Universe u;
  u.preds = {{"P1", 0}, {"P2", 0}};
  auto b = Base::make("B", {make_rule({RulePremise{{}, ia("P1", 1)}}, ia("P2", 1))});
  auto p1 = Base::make("P1b", {make_axiom(ia("P1", 1))});
  auto bq = Base::make("Bq", {});
  u.agents["a"] = Agent{"a", {b}};
  u.agents["both"] = Agent{"both", {b, bq}};

  Evaluator ev(u);
  auto fire = Formula::inferon(Atom{"P2", {}}, p1, Polarity::Assertion);
  CHECK(ev.supports(mk(u, Base::empty_base(), Formula::diamond("a", fire))).verdict);
  CHECK(ev.supports(mk(u, Base::empty_base(), Formula::box("a", fire))).verdict);
  CHECK(ev.supports(mk(u, Base::empty_base(), Formula::diamond("both", fire))).verdict);
  CHECK_FALSE(ev.supports(mk(u, Base::empty_base(), Formula::box("both", fire))).verdict);
  CHECK_THROWS_AS(ev.supports(mk(u, Base::empty_base(), Formula::box("nobody", fire))),
                  ModelError);
}

TEST_CASE("sequent reflexivity and a refuting witness") {
  Universe u;
  u.preds = {{"p", 0}, {"q", 0}};
  auto p = Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion);
  auto q = Formula::inferon(Atom{"q", {}}, Base::empty_base(), Polarity::Assertion);

  Evaluator ev(u);
  Query refl = mk(u, Base::empty_base(), p);
  refl.theta = {p};
  CHECK(ev.sequent(refl).verdict);

  // With only the p-axiom available, some extension supports p but not q.
  u.candidates = {make_axiom(ia("p", 1))};
  Evaluator ev2(u);
  Query bad = mk(u, Base::empty_base(), q);
  bad.theta = {p};
  auto j = ev2.sequent(bad);
  CHECK_FALSE(j.verdict);
  CHECK(j.witness.find("cand(0)") != std::string::npos);
}

TEST_CASE("validity over assembled bases") {
  Universe u;
  u.preds = {{"p", 0}, {"q", 0}};
  u.candidates = {make_axiom(ia("p", 1)), make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))};
  auto p = Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion);
  auto q = Formula::inferon(Atom{"q", {}}, Base::empty_base(), Polarity::Assertion);
  Evaluator ev(u);

  CHECK(ev.validity({p}, p).verdict);
  CHECK(ev.validity({}, Formula::implies(Formula::conj(p, q), p)).verdict);
  // p or its denial is not valid: the empty base refutes it.
  Universe bare;
  bare.preds = {{"p", 0}};
  Evaluator evb(bare);
  auto p0 = Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Denial);
  auto pb = Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion);
  CHECK_FALSE(evb.validity({}, Formula::disj(pb, p0)).verdict);
}

TEST_CASE("implication agrees with its sequent reading") {
  Gen gen(1212);
  std::vector<std::string> letters = {"p", "q"};
  Universe u = closure_universe(letters);
  auto b0 = Base::make("B", {make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))});
  std::vector<FormulaRef> pool;
  for (const auto& l : letters) {
    pool.push_back(Formula::inferon(Atom{l, {}}, Base::empty_base(), Polarity::Assertion));
    pool.push_back(Formula::inferon(Atom{l, {}}, b0, Polarity::Denial));
  }
  Evaluator ev(u);
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(pool, 2);
    auto g = gen.formula(pool, 2);
    bool contextual = gen.coin();
    Query imp = mk(u, b0, Formula::implies(f, g));
    Query seq = mk(u, b0, g);
    seq.theta = {f};
    if (contextual) {
      Site s = gen.site(letters, 1);
      imp.site = s;
      seq.site = s;
    }
    CHECK(ev.sequent(imp).verdict == ev.sequent(seq).verdict);
  }
}

TEST_CASE("empty site collapses to the site-free relation") {
  Gen gen(909);
  std::vector<std::string> letters = {"p", "q"};
  Universe u = closure_universe(
      letters, {make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))});
  auto b0 = Base::make("B", {make_rule({RulePremise{{ia("p", 1)}, ia("q", 1)}}, ia("p", 0))});
  std::vector<FormulaRef> pool = {
      Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion),
      Formula::inferon(Atom{"q", {}}, Base::empty_base(), Polarity::Assertion),
      Formula::inferon(Atom{"q", {}}, b0, Polarity::Denial),
  };
  Evaluator ev(u);
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(pool, 2);
    Query free = mk(u, b0, f);
    Query at_empty = mk(u, b0, f);
    at_empty.site = Site{"", {}};
    CAPTURE(print(f));
    CHECK(ev.supports(free).verdict == ev.supports(at_empty).verdict);
  }
}

TEST_CASE("contextual support bridges to the site-as-base form") {
  Gen gen(417);
  std::vector<std::string> letters = {"p", "q"};
  Universe u = closure_universe(letters);
  auto b0 = Base::make("B", {make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))});
  std::vector<FormulaRef> pool = {
      Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion),
      Formula::inferon(Atom{"q", {}}, Base::empty_base(), Polarity::Assertion),
      Formula::inferon(Atom{"p", {}}, b0, Polarity::Denial),
  };
  Evaluator ev(u);
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(pool, 2);
    Site s = gen.site(letters, 2);
    Query at_site = mk(u, b0, f);
    at_site.site = s;
    Query bridged = mk(u, base_union(b0, base_of(s)), f);
    CAPTURE(print(f));
    CHECK(ev.supports(at_site).verdict == ev.supports(bridged).verdict);
  }
}

TEST_CASE("compound elimination preserves support") {
  Gen gen(606);
  Universe u;
  u.preds = {{"p", 0}, {"q", 0}, {"r", 0}};
  u.candidates = {make_axiom(ia("p", 1)), make_axiom(ia("q", 0))};
  auto b0 = Base::make("B", {make_axiom(ia("p", 1)),
                             make_rule({RulePremise{{}, ia("p", 1)}}, ia("q", 1))});
  auto b1 = Base::make("C", {make_axiom(ia("r", 0))});

  std::vector<FormulaRef> atoms = {Formula::body_atom(Atom{"p", {}}),
                                   Formula::body_atom(Atom{"q", {}}),
                                   Formula::body_atom(Atom{"r", {}})};
  Evaluator ev(u);
  std::vector<BaseRef> bases = {Base::empty_base(), b0, b1};
  for (int i = 0; i < 200; ++i) {
    auto body = gen.formula(atoms, 2, /*with_bottom=*/false);
    auto host = bases[static_cast<std::size_t>(gen.pick(3))];
    auto pol = gen.coin() ? Polarity::Assertion : Polarity::Denial;
    auto comp = Formula::compound(body, host, pol);
    auto expanded = expand_compound(comp);
    for (const auto& at : bases) {
      CAPTURE(print(comp));
      CHECK(ev.supports(mk(u, at, comp)).verdict == ev.supports(mk(u, at, expanded)).verdict);
    }
  }
}

TEST_CASE("first-order clauses instantiate over the term pool") {
  Model m = parse_model(
      "const a b\n"
      "pred R/1\n"
      "base B { => <R(a),1>. => <R(b),1>. }\n"
      "base Bpart { => <R(a),1>. }\n");
  const Universe& u = m.universe;
  Evaluator ev(u);
  auto all = parse_formula_text("all x. <R(x) @ B, 1>", m);
  auto all_part = parse_formula_text("all x. <R(x) @ Bpart, 1>", m);
  CHECK(ev.supports(mk(u, Base::empty_base(), all)).verdict);
  auto j = ev.supports(mk(u, Base::empty_base(), all_part));
  CHECK_FALSE(j.verdict);
  CHECK(j.witness.find("b") != std::string::npos);

  auto ex = parse_formula_text("ex x. <R(x) @ Bpart, 1>", m);
  CHECK(ev.supports(mk(u, Base::empty_base(), ex)).verdict);
  // An existential with no witness anywhere fails.
  Model m2 = parse_model("const a\npred R/1\npred z/0\nbase E { }\n");
  Evaluator ev2(m2.universe);
  auto ex2 = parse_formula_text("ex x. <R(x) @ E, 1>", m2);
  CHECK_FALSE(ev2.supports(mk(m2.universe, Base::empty_base(), ex2)).verdict);
}

TEST_CASE("step budget exhaustion is an error, not a verdict") {
  Universe u = closure_universe({"p", "q", "r"});
  auto p = Formula::inferon(Atom{"p", {}}, Base::empty_base(), Polarity::Assertion);
  auto q = Formula::inferon(Atom{"q", {}}, Base::empty_base(), Polarity::Assertion);
  EvalConfig cfg;
  cfg.step_budget = 50;
  Evaluator ev(u, cfg);
  Query big = mk(u, Base::empty_base(), Formula::disj(p, Formula::implies(p, q)));
  CHECK_THROWS_AS(ev.supports(big), BudgetError);
}

TEST_CASE("site range honors caps and flags truncation") {
  Universe u = closure_universe({"p", "q"});
  EvalConfig cfg;
  cfg.site_size_cap = 1;
  Evaluator ev(u, cfg);
  CHECK(ev.site_range().size() == 5);  // empty + 4 singletons
  CHECK(ev.site_range_is_truncated());

  Evaluator ev_auto(u);
  CHECK(ev_auto.site_range().size() == 16);  // full powerset of 4 atoms
  CHECK_FALSE(ev_auto.site_range_is_truncated());
}
