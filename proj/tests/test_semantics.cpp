#include <gtest/gtest.h>

#include "mulingua/logic.hpp"
#include "mulingua/musiclib.hpp"
#include "mulingua/semantics.hpp"
#include "support/generators.hpp"

using namespace mulingua;
using mulingua::gen::Rng;

namespace {

Term v(const std::string& x) { return Term::var(x); }
const TypeExpr G = TypeExpr::base("G");

Value el(const Structure& st, const std::string& type, const std::string& name) {
  auto x = st.element(type, name);
  EXPECT_TRUE(x) << type << " " << name;
  return x.value_or(Value::star());
}

std::size_t idx(const Value& a) { return a.index(); }

}  // namespace

// ---- interpret_type ----

TEST(InterpretType, PropHasTwoElements) {
  const auto st = music::cyclic_group(12);
  const auto prop = interpret_type(st, {}, TypeExpr::prop());
  ASSERT_EQ(prop.size(), 2u);
  EXPECT_EQ(prop[0], Value::truth(false));
  EXPECT_EQ(prop[1], Value::truth(true));
}

TEST(InterpretType, ProductOfCyclicGroup) {
  const auto st = music::cyclic_group(12);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::product(G, G)).size(), 12u * 12u);
  EXPECT_EQ(cardinality(st, {}, TypeExpr::product(G, G)), 144u);
}

TEST(InterpretType, PiOverEmptyIndexIsTerminal) {
  const auto st = music::cyclic_group(12);
  const auto pi = interpret_type(st, {}, TypeExpr::pi("x", TypeExpr::zero(), G));
  ASSERT_EQ(pi.size(), 1u);
  EXPECT_TRUE(pi[0].entries().empty());
  // Same over an empty Sigma: chords with domfunc in the empty model.
  const auto empty = music::domfunc_structure(music::DomfuncModel::Empty);
  const auto sigma = TypeExpr::sigma(
      "c", TypeExpr::base("Chord"), TypeExpr::proposition(Formula::rel("domfunc", {v("c"), v("k")})));
  const Environment env{{"k", el(empty, "Key", "A")}};
  EXPECT_EQ(interpret_type(empty, env, sigma).size(), 0u);
  EXPECT_EQ(interpret_type(empty, env, TypeExpr::pi("x", sigma, TypeExpr::zero())).size(), 1u);
}

TEST(InterpretType, ConstructorCounts) {
  // Frozen against |A|^|B| style arithmetic on a 2-element carrier.
  const auto st = music::cyclic_group(2);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::coproduct(G, TypeExpr::unit())).size(), 3u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::arrow(G, G)).size(), 4u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::power(G)).size(), 4u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::arrow(TypeExpr::power(G), TypeExpr::prop())).size(), 16u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::zero()).size(), 0u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::pi("x", G, TypeExpr::coproduct(G, G))).size(), 16u);
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::sigma("x", G, TypeExpr::fin(v("x")))).size(), 1u);
  EXPECT_EQ(cardinality(st, {}, TypeExpr::arrow(TypeExpr::power(G), TypeExpr::prop())), 16u);
}

TEST(InterpretType, CoproductListsLeftFirst) {
  const auto st = music::cyclic_group(2);
  const auto s = interpret_type(st, {}, TypeExpr::coproduct(TypeExpr::unit(), G));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].kind(), Value::Kind::Inl);
  EXPECT_EQ(s[1].kind(), Value::Kind::Inr);
}

TEST(InterpretType, BudgetOverflow) {
  const auto st = music::cyclic_group(12);
  EXPECT_THROW(interpret_type(st, {}, TypeExpr::arrow(G, G)), BudgetExceeded);
  EXPECT_THROW(eval_formula(st, {}, Formula::exists("h", TypeExpr::arrow(G, G), Formula::top())), BudgetExceeded);
  EvalOptions tight;
  tight.element_budget = 100;
  EXPECT_THROW(interpret_type(st, {}, TypeExpr::product(G, G), tight), BudgetExceeded);
}

TEST(InterpretType, WTypeEnumeration) {
  const auto st = music::cyclic_group(2);
  // Only nullary labels: W (u G) 0 is exactly the two leaves.
  EXPECT_EQ(interpret_type(st, {}, TypeExpr::w("u", G, TypeExpr::zero())).size(), 2u);
  // Lists over G are infinite; enumeration fails at the depth bound.
  const auto lists = TypeExpr::w("u", TypeExpr::coproduct(TypeExpr::unit(), G),
                                 TypeExpr::case_of(v("u"), TypeExpr::zero(), TypeExpr::unit()));
  EXPECT_THROW(interpret_type(st, {}, lists), SemanticError);
}

// ---- eval_term ----

TEST(EvalTerm, IntervalInGis) {
  const auto st = music::gis_structure(12);
  const auto out = eval_term(st, {{"x", el(st, "S", "0")}, {"y", el(st, "S", "7")}}, Term::app(v("int"), {v("x"), v("y")}));
  EXPECT_EQ(out, el(st, "IVLS", "7"));
}

TEST(EvalTerm, TriadOfCMajor) {
  const auto st = music::harmony_structure(music::scale_library());
  const Environment env{{"s", el(st, "Scale", "C-major")}, {"d", el(st, "Degree", "1")}};
  const auto chord = eval_term(st, env, Term::app(v("triad"), {v("s"), v("d")}));
  // Oracle: C major = (0 2 4 5 7 9 11); degrees 1, 3, 5.
  EXPECT_EQ(chord, el(st, "Chord", "0-4-7"));
  const auto fifth = eval_term(st, {{"s", el(st, "Scale", "C-major")}, {"d", el(st, "Degree", "5")}},
                               Term::app(v("triad"), {v("s"), v("d")}));
  EXPECT_EQ(fifth, el(st, "Chord", "2-7-11"));
}

TEST(EvalTerm, IdentityLambda) {
  const auto st = music::cyclic_group(12);
  const auto id = eval_term(st, {}, Term::lambda("x", G, v("x")));
  ASSERT_EQ(id.kind(), Value::Kind::Table);
  ASSERT_EQ(id.entries().size(), 12u);
  for (const auto& [k, out] : id.entries()) EXPECT_EQ(k, out);
}

TEST(EvalTerm, ProductsAndProjections) {
  const auto st = music::cyclic_group(12);
  const Environment env{{"g", el(st, "G", "3")}};
  const auto p = eval_term(st, env, Term::pair(v("g"), Term::app(v("inv"), {v("g")})));
  EXPECT_EQ(p, Value::pair(el(st, "G", "3"), el(st, "G", "9")));
  EXPECT_EQ(eval_term(st, env, Term::proj2(Term::pair(v("g"), v("e")))), el(st, "G", "0"));
  EXPECT_EQ(eval_term(st, env, Term::app(Term::lambda("x", G, Term::app(v("star"), {v("x"), v("x")})), {v("g")})),
            el(st, "G", "6"));
  EXPECT_EQ(eval_term(st, env, Term::tuple_proj(Term::pair(v("g"), Term::pair(v("e"), v("g"))), 2)), el(st, "G", "0"));
}

// ---- eval_formula ----

TEST(EvalFormula, VacuousForall) {
  EXPECT_TRUE(eval_formula(music::trivial_group(), {}, Formula::forall("x", TypeExpr::zero(), Formula::bottom())));
  EXPECT_FALSE(eval_formula(music::trivial_group(), {}, Formula::exists("x", TypeExpr::zero(), Formula::top())));
}

TEST(EvalFormula, GisCompositionAxiom) {
  const auto st = music::gis_structure(12);
  const auto s = TypeExpr::base("S");
  const auto f = Formula::forall(
      "r", s,
      Formula::forall("s", s,
                      Formula::forall("t", s,
                                      Formula::eq(TypeExpr::base("IVLS"),
                                                  Term::app(v("star"), {Term::app(v("int"), {v("r"), v("s")}),
                                                                        Term::app(v("int"), {v("s"), v("t")})}),
                                                  Term::app(v("int"), {v("r"), v("t")})))));
  ASSERT_TRUE(well_formed_formula(st.signature, {}, f));
  EXPECT_TRUE(eval_formula(st, {}, f));
}

TEST(EvalFormula, DominanceDependsOnScaleType) {
  const auto st = music::harmony_structure(music::scale_library());
  const auto a = el(st, "NoteName", "A");
  EXPECT_TRUE(eval_formula(st, {{"n", a}}, music::dominance_formula("harm")));
  EXPECT_FALSE(eval_formula(st, {{"n", a}}, music::dominance_formula("nat")));
}

TEST(EvalFormula, MembershipIsEvaluation) {
  const auto st = music::cyclic_group(3);
  const auto pc = G;
  const auto f = Formula::exists(
      "s", TypeExpr::power(pc),
      Formula::conj(Formula::member(v("e"), v("s")),
                    Formula::negation(Formula::member(Term::app(v("inv"), {Term::app(v("star"), {v("e"), v("e")})}), v("s")))));
  // e and inv(e*e) are both 0, so no predicate separates them.
  EXPECT_FALSE(eval_formula(st, {}, f));
  EXPECT_TRUE(eval_formula(st, {}, Formula::forall("s", TypeExpr::power(pc), Formula::disj(Formula::member(v("e"), v("s")), Formula::negation(Formula::member(v("e"), v("s")))))));
}

// ---- check_theory ----

TEST(CheckTheory, CyclicGroupPasses) {
  const auto report = check_theory(music::cyclic_group(12), music::make_group_theory());
  EXPECT_TRUE(report.all_pass());
  EXPECT_EQ(report.passed(), 3u);
}

TEST(CheckTheory, SubtractionFailsAssociativityWithCounterexample) {
  const auto st = music::cyclic_subtraction(12);
  const auto report = check_theory(st, music::make_group_theory());
  ASSERT_FALSE(report.all_pass());
  const auto& assoc = report.results.at(0);
  EXPECT_EQ(assoc.name, "associativity");
  ASSERT_FALSE(assoc.holds);
  ASSERT_TRUE(assoc.counterexample);
  const auto& env = *assoc.counterexample;
  ASSERT_EQ(env.size(), 3u);
  // Oracle: direct modular arithmetic on the counterexample.
  const long a = idx(env[0].second), b = idx(env[1].second), c = idx(env[2].second);
  auto sub = [](long x, long y) { return ((x - y) % 12 + 12) % 12; };
  EXPECT_NE(sub(sub(a, b), c), sub(a, sub(b, c)));
  // (1 - 1) - 1 = 11 but 1 - (1 - 1) = 1: the triple (1, 1, 1) is refuted as well.
  const auto one = el(st, "G", "1");
  const auto theory = music::make_group_theory();
  EXPECT_FALSE(eval_formula(st, {{"a", one}, {"b", one}, {"c", one}}, theory.axioms.at(0).formula));
}

TEST(CheckTheory, GisPassesAndConstantIntervalFails) {
  const auto th = music::make_gis_theory();
  ASSERT_TRUE(validate_theory(th));
  const auto report = check_theory(music::gis_structure(12), th);
  EXPECT_TRUE(report.all_pass());
  EXPECT_EQ(report.to_text(), "axiom composition: pass\naxiom unique-transport: pass\n2 axioms, 2 pass\n");
  const auto constant = music::gis_structure(12, [](std::size_t, std::size_t) { return std::size_t{0}; });
  const auto bad = check_theory(constant, th);
  ASSERT_EQ(bad.results.size(), 2u);
  EXPECT_FALSE(bad.results[1].holds);
  EXPECT_TRUE(bad.results[1].counterexample);
}

TEST(CheckTheory, DiatonicGisPasses) { EXPECT_TRUE(check_theory(music::gis_structure(7), music::make_gis_theory()).all_pass()); }

TEST(CheckTheory, TrivialGroupPasses) { EXPECT_TRUE(check_theory(music::trivial_group(), music::make_group_theory()).all_pass()); }

TEST(CheckTheory, ReportFormat) {
  const auto report = check_theory(music::cyclic_subtraction(12), music::make_group_theory());
  const auto text = report.to_text();
  EXPECT_EQ(text.substr(0, text.find('\n')), "axiom associativity: FAIL counterexample ((a 0) (b 0) (c 1))");
  EXPECT_NE(text.find("3 axioms, 0 pass"), std::string::npos);
}

// ---- validate_structure ----

TEST(ValidateStructure, DetectsPartialAndOutOfCodomainTables) {
  auto st = music::cyclic_group(3);
  EXPECT_TRUE(validate_structure(st));
  auto partial = st;
  partial.fun_tables["star"].erase(partial.fun_tables["star"].begin());
  EXPECT_FALSE(validate_structure(partial));
  auto stray = st;
  stray.fun_tables["inv"].begin()->second = Value::star();
  EXPECT_FALSE(validate_structure(stray));
}

// ---- homomorphisms ----

namespace {

StructureHom endo(const Structure& st, std::function<std::size_t(std::size_t)> f) {
  StructureHom h{&st, &st, {}};
  const auto& g = st.carriers.at("G");
  for (const auto& x : g) h.components["G"][x] = g[f(x.index()) % g.size()];
  return h;
}

}  // namespace

TEST(StructureHom, Identity) {
  const auto st = music::cyclic_group(12);
  EXPECT_TRUE(check_structure_hom(endo(st, [](std::size_t x) { return x; })));
  const auto harmony = music::harmony_structure(music::scale_library());
  StructureHom id{&harmony, &harmony, {}};
  for (const auto& [type, carrier] : harmony.carriers)
    for (const auto& x : carrier) id.components[type][x] = x;
  EXPECT_TRUE(check_structure_hom(id));
}

TEST(StructureHom, ShiftIsNotAGroupHom) {
  const auto st = music::cyclic_group(12);
  const auto verdict = check_structure_hom(endo(st, [](std::size_t x) { return x + 1; }));
  ASSERT_FALSE(verdict);
  EXPECT_NE(verdict.message.find("'star'"), std::string::npos) << verdict.message;
  EXPECT_NE(verdict.message.find("h(star(0 0)) = 1 but star(1 1) = 2"), std::string::npos) << verdict.message;
}

TEST(StructureHom, UnitMultiplicationIsAGroupHom) {
  const auto st = music::cyclic_group(12);
  EXPECT_TRUE(check_structure_hom(endo(st, [](std::size_t x) { return 5 * x; })));
  // Oracle over all multipliers: x -> kx is a hom of (Z12, +) for every k.
  for (std::size_t k = 0; k < 12; ++k) EXPECT_TRUE(check_structure_hom(endo(st, [k](std::size_t x) { return k * x; })));
}

TEST(StructureHom, RelationsMustBePreserved) {
  const auto st = music::domfunc_structure(music::DomfuncModel::HarmonicMinor);
  StructureHom h{&st, &st, {}};
  for (const auto& [type, carrier] : st.carriers)
    for (const auto& x : carrier) h.components[type][x] = x;
  // Send every key to A: lt(k) -> lt(A) fails for k != A.
  for (auto& [k, image] : h.components["Key"]) image = el(st, "Key", "A");
  EXPECT_FALSE(check_structure_hom(h));
}

TEST(StructureHom, MapAlongConstructors) {
  const auto st = music::cyclic_group(12);
  const auto h = endo(st, [](std::size_t x) { return x + 1; });
  const auto v0 = el(st, "G", "0"), v1 = el(st, "G", "1");
  EXPECT_EQ(map_along(h, TypeExpr::product(G, G), Value::pair(v0, v1)), Value::pair(v1, el(st, "G", "2")));
  EXPECT_EQ(map_along(h, TypeExpr::coproduct(TypeExpr::unit(), G), Value::inr(v0)), Value::inr(v1));
  EXPECT_FALSE(map_along(h, TypeExpr::arrow(G, G), Value::table({})));
}

// ---- properties ----

TEST(SemanticsProperty, CheckedTermsEvaluateIntoTheirType) {
  Rng rng(41);
  const auto sig = gen::two_sorted_signature();
  for (int trial = 0; trial < 300; ++trial) {
    const auto st = gen::random_two_sorted_structure(rng, 1 + rng.below(3), 1 + rng.below(2));
    const Context ctx{{{"y", TypeExpr::base("A")}, {"w", TypeExpr::base("B")}}};
    const auto type = gen::random_type(rng, 2);
    const auto term = gen::random_term(rng, ctx, type, 4);
    ASSERT_TRUE(check_term(sig, ctx, term, type)) << to_string(term);
    const Environment env{{"y", st.carriers.at("A")[rng.below(st.carriers.at("A").size())]},
                          {"w", st.carriers.at("B")[rng.below(st.carriers.at("B").size())]}};
    const auto value = eval_term(st, env, term);
    EXPECT_TRUE(belongs(st, env, type, value)) << to_string(term) << " = " << value;
    if (cardinality(st, env, type) <= 4096) {
      EXPECT_TRUE(interpret_type(st, env, type).contains(value)) << value;
    }
  }
}

TEST(SemanticsProperty, BooleanLawsOnRandomFormulas) {
  Rng rng(43);
  const Context ctx{{{"a", TypeExpr::base("A")}, {"b", TypeExpr::base("B")}}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto st = gen::random_two_sorted_structure(rng, 1 + rng.below(3), 1 + rng.below(3));
    const auto f = gen::random_formula(rng, ctx, 3), g = gen::random_formula(rng, ctx, 3), h = gen::random_formula(rng, ctx, 3);
    for_each_environment(st, ctx, {}, [&](const Environment& env) {
      auto ev = [&](const Formula& x) { return eval_formula(st, env, x); };
      using F = Formula;
      EXPECT_EQ(ev(F::negation(F::conj(f, g))), ev(F::disj(F::negation(f), F::negation(g))));
      EXPECT_EQ(ev(F::negation(F::disj(f, g))), ev(F::conj(F::negation(f), F::negation(g))));
      EXPECT_EQ(ev(F::conj(f, F::disj(g, h))), ev(F::disj(F::conj(f, g), F::conj(f, h))));
      EXPECT_EQ(ev(F::disj(f, F::conj(g, h))), ev(F::conj(F::disj(f, g), F::disj(f, h))));
      EXPECT_EQ(ev(F::implies(f, g)), ev(F::disj(F::negation(f), g)));
      return true;
    });
  }
}

TEST(SemanticsProperty, QuantifiersAgreeWithBruteForce) {
  Rng rng(47);
  const auto A = TypeExpr::base("A");
  const Context ctx{{{"b", TypeExpr::base("B")}, {"x", A}}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto st = gen::random_two_sorted_structure(rng, 1 + rng.below(4), 1 + rng.below(2));
    const auto phi = gen::random_formula(rng, ctx, 3);
    for (const auto& b : st.carriers.at("B")) {
      bool any = false, all = true;
      for (const auto& x : st.carriers.at("A")) {
        const bool holds = eval_formula(st, {{"b", b}, {"x", x}}, phi);
        any = any || holds;
        all = all && holds;
      }
      EXPECT_EQ(eval_formula(st, {{"b", b}}, Formula::exists("x", A, phi)), any) << to_string(phi);
      EXPECT_EQ(eval_formula(st, {{"b", b}}, Formula::forall("x", A, phi)), all) << to_string(phi);
    }
  }
}

TEST(SemanticsProperty, CounterexamplesFalsify) {
  Rng rng(53);
  const Context ctx{{{"a", TypeExpr::base("A")}, {"b", TypeExpr::base("B")}}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto st = gen::random_two_sorted_structure(rng, 1 + rng.below(3), 1 + rng.below(3));
    const auto f = gen::random_formula(rng, ctx, 3);
    const auto cex = find_counterexample(st, ctx, f);
    bool all = true;
    for_each_environment(st, ctx, {}, [&](const Environment& env) { return all = eval_formula(st, env, f); });
    EXPECT_EQ(!cex.has_value(), all);
    if (cex) {
      const auto [prefix, body] = split_universal_prefix(f);
      EXPECT_FALSE(eval_formula(st, *cex, body)) << to_string(f) << " at " << to_string(*cex);
    }
  }
}
