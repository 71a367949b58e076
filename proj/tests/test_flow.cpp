#include <doctest.h>

#include "gen.hpp"
#include "inferon/flow.hpp"
#include "inferon/parse.hpp"
#include "inferon/print.hpp"

using namespace inferon;
using inferon::testing::Gen;

namespace {

Model flashlight() {
  return parse_model_file(std::string(INFERON_SOURCE_DIR) + "/data/scenarios/flashlight.inf");
}

Model airport() {
  return parse_model_file(std::string(INFERON_SOURCE_DIR) + "/data/scenarios/airport.inf");
}

}  // namespace

TEST_CASE("morphism images rewrite inferons over the source base only") {
  Model m = flashlight();
  const auto& f = m.morphisms.at("f");

  auto on = parse_formula_text("<ON(s1) @ P, 1>", m);
  auto up = apply_up(f, on);
  CHECK(print(up) == "<ONF(s1) @ Pc, 1>");

  // Inferons over other bases are untouched, bottom is fixed.
  auto lit = parse_formula_text("<LIT(b1) @ Pb, 1>", m);
  CHECK(formula_equal(apply_up(f, lit), lit));
  CHECK(apply_up(f, Formula::bottom())->kind() == Formula::Kind::Bottom);

  // Down maps argument terms and keeps the base.
  auto on_core = parse_formula_text("<ON(f1) @ P, 1>", m);
  auto down = apply_down(f, on_core);
  REQUIRE(down.has_value());
  CHECK(print(*down) == "<ON(s1) @ P, 1>");

  // Outside the table the down image is absent.
  auto on_b1 = parse_formula_text("<ON(b1) @ P, 1>", m);
  CHECK_FALSE(apply_down(f, on_b1).has_value());

  // Connectives and quantifiers map homomorphically; modalities are outside
  // the fragment.
  auto conj = Formula::conj(on, lit);
  CHECK(print(apply_up(f, conj)) == "<ONF(s1) @ Pc, 1> & <LIT(b1) @ Pb, 1>");
  auto quantified = parse_formula_text("all x. <ON(x) @ P, 1>", m);
  CHECK(print(apply_up(f, quantified)) == "all x. <ONF(x) @ Pc, 1>");
  CHECK_THROWS_AS(apply_up(f, Formula::box("someone", on)), FragmentError);
}

TEST_CASE("identity morphism satisfies the translation condition") {
  Model m = flashlight();
  auto id = identity_morphism(m.universe.bases.at("P"), Base::empty_base(), m.universe);
  auto rep = check_chu(id, m.universe);
  CHECK(rep.ok);
  CHECK(rep.checked > 0);
  // and it is quasi against the full universe pool
  CHECK(is_quasi(id, m.universe).ok);
}

TEST_CASE("flashlight morphisms: condition, mutation, witness") {
  Model m = flashlight();
  CHECK(check_chu(m.morphisms.at("f"), m.universe).ok);
  CHECK(check_chu(m.morphisms.at("g"), m.universe).ok);

  auto rep = check_chu(m.morphisms.at("fbad"), m.universe);
  REQUIRE_FALSE(rep.ok);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->pred == "ON");
  REQUIRE(rep.counterexample->terms.size() == 1);
  CHECK(print(rep.counterexample->terms[0]) == "f1");

  // serial and parallel sweeps agree (first counterexample included)
  auto rep_par = check_chu(m.morphisms.at("fbad"), m.universe, {}, true);
  CHECK(rep_par.ok == rep.ok);
  REQUIRE(rep_par.counterexample.has_value());
  CHECK(rep_par.counterexample->pred == rep.counterexample->pred);
}

TEST_CASE("quasi surjectivity: restriction and collapse") {
  Model m = flashlight();
  std::vector<FormulaRef> reachable;
  for (const auto& chk : m.checks) {
    if (chk.formula) formula_collect_inferons(chk.formula, reachable);
    for (const auto& t : chk.theta) formula_collect_inferons(t, reachable);
  }
  auto rep = is_quasi(m.morphisms.at("f"), m.universe, true, reachable);
  CHECK(rep.ok);
  CHECK(rep.restricted);

  // Unrestricted, the down table misses most switch-side inferons.
  auto full = is_quasi(m.morphisms.at("f"), m.universe);
  CHECK_FALSE(full.ok);
  CHECK(!full.missing.empty());

  // Collapsing two predicates leaves one without a preimage.
  PreInferomorphism collapse = m.morphisms.at("f");
  collapse.up[1]["ON"] = "ONF";
  collapse.up[1]["LIT"] = "ONF";
  auto creport = is_quasi(collapse, m.universe, true,
                          {parse_formula_text("<LIT(f1) @ Pc, 1>", m)});
  CHECK_FALSE(creport.ok);
  CHECK(creport.missing.find("LIT") != std::string::npos);
}

TEST_CASE("connectedness finds the least core witness") {
  Model m = flashlight();
  const auto& ch = m.channels.at("ch");
  auto w = connected(ch, "f", Term::constant("s1"), "g", Term::constant("b1"));
  REQUIRE(w.has_value());
  CHECK(print(*w) == "f1");
  CHECK_FALSE(connected(ch, "f", Term::constant("b1"), "g", Term::constant("s1")).has_value());
  CHECK_THROWS_AS(connected(ch, "nope", Term::constant("s1"), "g", Term::constant("b1")),
                  ModelError);
}

TEST_CASE("carries: positive, unconnected, and de-normalized variants") {
  Model m = flashlight();
  EvalConfig cfg;
  Evaluator ev(m.universe, cfg);
  auto pos = carries(m.channels.at("ch"), "f", Term::constant("s1"), "g", Term::constant("b1"),
                     "ON", "LIT", Polarity::Assertion, ev);
  CHECK(pos.ok);
  CHECK(pos.connected);

  auto uncon = carries(m.channels.at("ch"), "f", Term::constant("b1"), "g",
                       Term::constant("s1"), "ON", "LIT", Polarity::Assertion, ev);
  CHECK_FALSE(uncon.ok);
  CHECK_FALSE(uncon.connected);

  auto no_norm = carries(m.channels.at("chfree"), "ffree", Term::constant("s1"), "gfree",
                         Term::constant("b1"), "ON", "LIT", Polarity::Assertion, ev);
  CHECK_FALSE(no_norm.ok);
  CHECK(no_norm.connected);
}

TEST_CASE("carries discharges into component support") {
  // When the channel carries ON(s1) to LIT(b1) and the premise is supported,
  // the conclusion is supported too.
  Model m = flashlight();
  Evaluator ev(m.universe);
  Query prem;
  prem.universe = &m.universe;
  prem.base = Base::empty_base();
  prem.consequent = parse_formula_text("<ON(s1) @ P, 1>", m);
  REQUIRE(ev.supports(prem).verdict);
  Query concl = prem;
  concl.consequent = parse_formula_text("<LIT(b1) @ Pb, 1>", m);
  CHECK(ev.supports(concl).verdict);
}

TEST_CASE("morphism composition and identity units") {
  Model m = flashlight();
  const auto& f = m.morphisms.at("f");
  auto idP = identity_morphism(m.universe.bases.at("P"), Base::empty_base(), m.universe);
  auto idC = identity_morphism(m.universe.bases.at("Pc"), Base::empty_base(), m.universe);

  auto left_unit = compose(idC, f);   // id . f
  auto right_unit = compose(f, idP);  // f . id
  for (const auto& [t, v] : f.down) {
    CHECK(left_unit.down_of(t) == f.down_of(t));
    CHECK(right_unit.down_of(t) == f.down_of(t));
  }
  CHECK(left_unit.up_of(1, "ON") == "ONF");
  CHECK(right_unit.up_of(1, "ON") == "ONF");

  // Pointwise composition laws on a two-step chain built from f and a
  // renaming of the core into itself.
  PreInferomorphism rot;
  rot.name = "rot";
  rot.source = m.universe.bases.at("Pc");
  rot.target = m.universe.bases.at("PcFree");
  rot.ambient = Base::empty_base();
  rot.down.emplace(Term::constant("f1"), Term::constant("f1"));
  rot.up[1]["ONF"] = "ONF";
  rot.up[1]["LITF"] = "LITF";
  auto h = compose(rot, f);
  CHECK(h.up_of(1, "ON") == rot.up_of(1, f.up_of(1, "ON")));
  CHECK(h.down_of(Term::constant("f1")) == f.down_of(*rot.down_of(Term::constant("f1"))));
  CHECK(base_equal(h.source, f.source));
  CHECK(base_equal(h.target, rot.target));

  CHECK_THROWS_AS(compose(f, f), ModelError);  // endpoints do not match
}

TEST_CASE("base_of turns sites into axiom bases") {
  CHECK(base_of(make_site("", {}))->rules().empty());
  auto p1 = make_iatom(Atom{"p", {}}, Polarity::Assertion);
  auto b = base_of(make_site("S", {p1}));
  REQUIRE(b->rules().size() == 1);
  CHECK(b->rules()[0].level() == 0);
  CHECK(b->rules()[0].concl == p1);

  Model m = airport();
  auto s1 = base_of(m.universe.sites.at("S1"));
  CHECK(s1->rules().size() == 2);
}

TEST_CASE("site channels compose with union labels") {
  Model m = airport();
  const auto& s1 = m.universe.sites.at("S1");
  const auto& s2 = m.universe.sites.at("S2");
  const auto& s6 = m.universe.sites.at("S6");

  auto c12 = make_site_channel(s1, s2);
  CHECK(site_equal(c12.label, site_difference(s2, s1)));
  auto c26 = make_site_channel(s2, s6);
  auto c16 = compose(c12, c26);
  CHECK(site_equal(c16.label, site_difference(s6, s1)));
  CHECK(site_equal(c16.source, s1));
  CHECK(site_equal(c16.target, s6));
  // inclusion chains have disjoint labels
  CHECK(c16.label.atoms.size() == s6.atoms.size() - s1.atoms.size());

  auto ident = make_site_channel(s1, s1);
  auto same = compose(ident, make_site_channel(s1, s2));
  CHECK(site_equal(same.label, c12.label));

  CHECK_THROWS_AS(make_site_channel(s2, s1), ModelError);
  CHECK_THROWS_AS(compose(c26, c12), ModelError);
}

TEST_CASE("chu equivalence on flashlight sequents") {
  Model m = flashlight();
  const auto& f = m.morphisms.at("f");
  EvalConfig cfg;
  cfg.quantifier_bases = {Base::empty_base(), m.universe.bases.at("P"),
                          m.universe.bases.at("Pb"), m.universe.bases.at("Pc")};
  Evaluator ev(m.universe, cfg);

  Gen gen(654);
  std::vector<FormulaRef> pool = {
      parse_formula_text("<ON(f1) @ P, 1>", m),   // maps under both images
      parse_formula_text("<ON(f1) @ P, 0>", m),
      parse_formula_text("<LIT(b1) @ Pb, 1>", m),  // untouched by f
      parse_formula_text("<LITF(f1) @ Pc, 1>", m),
  };
  int evaluated = 0;
  for (int i = 0; i < 120; ++i) {
    auto phi = gen.formula(pool, 2);
    std::vector<FormulaRef> theta;
    if (gen.coin()) theta.push_back(gen.formula(pool, 1));
    if (gamma_pair(theta, phi) > 7) continue;

    auto down_phi = apply_down(f, phi);
    if (!down_phi) continue;
    std::vector<FormulaRef> down_theta, up_theta;
    bool ok = true;
    for (const auto& t : theta) {
      auto d = apply_down(f, t);
      if (!d) {
        ok = false;
        break;
      }
      down_theta.push_back(*d);
      up_theta.push_back(apply_up(f, t));
    }
    if (!ok) continue;

    Query qd;
    qd.universe = &m.universe;
    qd.base = Base::empty_base();
    qd.theta = down_theta;
    qd.consequent = *down_phi;
    Query qu = qd;
    qu.theta = up_theta;
    qu.consequent = apply_up(f, phi);
    CAPTURE(print(phi));
    CHECK(ev.sequent(qd).verdict == ev.sequent(qu).verdict);
    ++evaluated;
  }
  CHECK(evaluated >= 60);
}
