#include <gtest/gtest.h>

#include <algorithm>

#include "mulingua/logic.hpp"
#include "mulingua/musiclib.hpp"

using namespace mulingua;
using music::ScaleKind;

namespace {

Term v(const std::string& x) { return Term::var(x); }

std::vector<std::size_t> sorted(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

TEST(GroupTheory, CyclicAndTrivialGroupsPass) {
  const auto theory = music::make_group_theory();
  EXPECT_EQ(theory.axioms.size(), 3u);
  for (std::size_t n : {1u, 2u, 5u, 12u}) EXPECT_TRUE(check_theory(music::cyclic_group(n), theory).all_pass()) << n;
  EXPECT_TRUE(check_theory(music::trivial_group(), theory).all_pass());
}

TEST(GroupTheory, SubtractionFailsOnlyAssociativityAboveTwo) {
  const auto report = check_theory(music::cyclic_subtraction(12), music::make_group_theory());
  EXPECT_FALSE(report.all_pass());
  ASSERT_FALSE(report.results.empty());
  EXPECT_FALSE(report.results[0].holds);
  // Z_2 subtraction coincides with addition.
  EXPECT_TRUE(check_theory(music::cyclic_subtraction(2), music::make_group_theory()).all_pass());
}

TEST(TIGroup, GroupAxiomsAndActionLaws) {
  const auto ti = music::ti_group(12);
  EXPECT_EQ(ti.action.elements().size(), 24u);
  EXPECT_TRUE(check_theory(ti.group(), music::make_group_theory()).all_pass());
  EXPECT_TRUE(vl::check_action(ti.action, ti.pitch));
  // Oracle: T_k x = x + k and I_k x = k - x.
  for (std::size_t k = 0; k < 12; ++k)
    for (std::size_t x = 0; x < 12; ++x) {
      EXPECT_EQ(ti.action.act(ti.t(k), ti.pitch[x]), ti.pitch[(x + k) % 12]);
      EXPECT_EQ(ti.action.act(ti.i(k), ti.pitch[x]), ti.pitch[(k + 12 - x) % 12]);
    }
  // Exhaustive compatibility (gh).x = g.(h.x).
  for (const auto& g : ti.action.elements())
    for (const auto& h : ti.action.elements())
      for (const auto& x : ti.pitch)
        ASSERT_EQ(ti.action.act(ti.action.multiply(g, h), x), ti.action.act(g, ti.action.act(h, x)));
  EXPECT_EQ(ti.action.identity(), ti.t(0));
}

TEST(TIGroup, DihedralRelation) {
  const auto ti = music::ti_group(12);
  const auto& a = ti.action;
  for (std::size_t k = 0; k < 12; ++k)
    EXPECT_EQ(a.multiply(a.multiply(ti.i(0), ti.t(k)), ti.i(0)), ti.t((12 - k) % 12)) << k;
}

TEST(GisTheory, StandardModelsPassAndConstantIntervalFails) {
  const auto theory = music::make_gis_theory();
  EXPECT_TRUE(check_theory(music::gis_structure(12), theory).all_pass());
  EXPECT_TRUE(check_theory(music::gis_structure(7), theory).all_pass());
  const auto constant = check_theory(music::gis_structure(12, [](std::size_t, std::size_t) { return 0; }), theory);
  EXPECT_FALSE(constant.all_pass());
  ASSERT_EQ(constant.results.size(), 2u);
  EXPECT_FALSE(constant.results[1].holds);
}

TEST(IntervalClass, RepresentativesAndSymmetry) {
  EXPECT_EQ(music::interval_class(0, 12), 0u);
  EXPECT_EQ(music::interval_class(5, 12), 5u);
  EXPECT_EQ(music::interval_class(7, 12), 5u);
  EXPECT_EQ(music::interval_class(6, 12), 6u);
  for (std::size_t n = 1; n <= 13; ++n)
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(music::interval_class(i, n), music::interval_class((n - i) % n, n)) << i << " mod " << n;
      EXPECT_LE(2 * music::interval_class(i, n), n);
    }
  const auto st = music::pitch_class_structure(12);
  EXPECT_EQ(st.carriers.at("IC").size(), 7u);
  EXPECT_TRUE(validate_structure(st));
}

TEST(Scales, StepPatternsAndSpellings) {
  for (auto kind : {ScaleKind::Major, ScaleKind::NaturalMinor, ScaleKind::HarmonicMinor}) {
    const auto& steps = music::step_pattern(kind);
    int total = 0;
    for (int s : steps) total += s;
    EXPECT_EQ(total, 12) << music::kind_name(kind);
  }
  EXPECT_EQ(music::make_scale(0, ScaleKind::Major), (music::Scale{0, 2, 4, 5, 7, 9, 11}));
  EXPECT_EQ(music::make_scale(music::note_pc("A"), ScaleKind::HarmonicMinor), (music::Scale{9, 11, 0, 2, 4, 5, 8}));
  EXPECT_EQ(music::note_pc("F#"), 6u);
  EXPECT_THROW(music::note_pc("H"), std::invalid_argument);
  EXPECT_EQ(music::scale_library().entries.size(), 36u);
}

TEST(Triad, CMajorDegrees) {
  const auto c = music::make_scale(0, ScaleKind::Major);
  EXPECT_EQ(sorted(music::triad(c, 5)), (std::vector<std::size_t>{2, 7, 11}));
  EXPECT_EQ(sorted(music::triad(c, 1)), (std::vector<std::size_t>{0, 4, 7}));
  EXPECT_THROW(music::triad(c, 8), std::out_of_range);
  EXPECT_THROW(music::triad(c, 0), std::out_of_range);
  EXPECT_THROW(music::scdeg(c, 8), std::out_of_range);
  EXPECT_EQ(music::chord_name(music::triad(c, 5)), "2-7-11");
}

TEST(Triad, IndexArithmeticOracle) {
  for (const auto& e : music::scale_library().entries)
    for (std::size_t d = 1; d <= 7; ++d) {
      std::vector<std::size_t> expected{e.pcs[(d - 1) % 7], e.pcs[(d + 1) % 7], e.pcs[(d + 3) % 7]};
      EXPECT_EQ(sorted(music::triad(e.pcs, d)), sorted(expected));
    }
}

TEST(LeadingTone, MinorScalesOfA) {
  const auto a = music::note_pc("A");
  EXPECT_TRUE(music::contains_leading_tone(music::make_scale(a, ScaleKind::HarmonicMinor)));
  EXPECT_FALSE(music::contains_leading_tone(music::make_scale(a, ScaleKind::NaturalMinor)));
  EXPECT_TRUE(music::contains_leading_tone(music::make_scale(a, ScaleKind::Major)));
  // Degree 7 equal to degree 1 is distance 0, not 1.
  EXPECT_FALSE(music::contains_leading_tone(music::Scale{9, 9, 9, 9, 9, 9, 9}));
  // The interval must descend: a degree 7 a semitone above the tonic does not count.
  EXPECT_FALSE(music::contains_leading_tone(music::Scale{0, 2, 3, 5, 7, 8, 1}));
}

TEST(LeadingTone, PredicateTablesMatchSemitoneArithmetic) {
  const auto lib = music::scale_library();
  const auto st = music::leading_tone_predicates(lib);
  EXPECT_TRUE(validate_structure(st));
  const auto& scales = st.carriers.at("Scale");
  ASSERT_EQ(scales.size(), lib.entries.size());
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const auto& pcs = lib.entries[i].pcs;
    const bool expected = (pcs[0] + 12 - pcs[6]) % 12 == 1;
    EXPECT_EQ(st.rel_tables.at("containsLeadingTone").count({scales[i]}) == 1, expected) << scales[i];
  }
  EXPECT_TRUE(st.element("Scale", "A-harmonic-minor"));
}

TEST(Dominance, BiconditionalHoldsByEvaluation) {
  const auto st = music::harmony_structure(music::scale_library());
  EXPECT_TRUE(validate_structure(st));
  for (const char* sctype : {"harm", "nat", "maj"}) {
    const auto scale = Term::call(sctype, {v("n")});
    const auto lhs = Formula::rel("dominant", {Term::call("V", {scale})});
    const auto rhs = Formula::rel("containsLeadingTone", {scale});
    const auto iff = Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    const auto sentence = Formula::forall("n", TypeExpr::base("NoteName"), iff);
    ASSERT_TRUE(well_formed_formula(st.signature, {}, sentence)) << well_formed_formula(st.signature, {}, sentence).message;
    EXPECT_TRUE(eval_formula(st, {}, sentence)) << sctype;
  }
}

TEST(Dominance, ContextDependence) {
  const auto st = music::harmony_structure(music::scale_library());
  for (const auto& n : st.carriers.at("NoteName")) {
    const Environment env{{"n", n}};
    EXPECT_TRUE(eval_formula(st, env, music::dominance_formula("harm"))) << n;
    EXPECT_FALSE(eval_formula(st, env, music::dominance_formula("nat"))) << n;
    EXPECT_TRUE(eval_formula(st, env, music::dominance_formula("maj"))) << n;
  }
  EXPECT_TRUE(well_formed_formula(st.signature, music::note_context(), music::dominance_formula("harm")));
}

TEST(Domfunc, ModelsAreValid) {
  for (auto model : {music::DomfuncModel::HarmonicMinor, music::DomfuncModel::Empty, music::DomfuncModel::Adversarial}) {
    const auto st = music::domfunc_structure(model);
    EXPECT_TRUE(validate_structure(st));
  }
  EXPECT_TRUE(music::domfunc_structure(music::DomfuncModel::Empty).rel_tables.at("domfunc").empty());
  const auto st = music::domfunc_structure(music::DomfuncModel::HarmonicMinor);
  EXPECT_EQ(st.fun_tables.at("lt").at({*st.element("Key", "A")}), *st.element("PC", "8"));
}

TEST(TiVlsTable, FibersAreTransporters) {
  const auto ti = music::ti_group(12);
  const auto m = music::ti_vls_table(ti);
  EXPECT_TRUE(vl::validate(m));
  for (const auto& x : ti.pitch)
    for (const auto& y : ti.pitch) EXPECT_EQ(m.vlr.at({x, y}), vl::transporters(ti.action, x, y));
}
