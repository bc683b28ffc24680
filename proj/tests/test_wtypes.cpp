#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "mulingua/musiclib.hpp"
#include "mulingua/sexpr.hpp"
#include "mulingua/wtypes.hpp"
#include "support/generators.hpp"

using namespace mulingua;
using mulingua::gen::Rng;

namespace {

constexpr const char* kNineAndAHalf =
    "(rt 19/2 (rt 2) (rt 5/2 (rt 1 (rt 2) (rt 1)) (rt 1) (rt 1)) (rt 3 (rt 3/2) (rt 2)))";

const FinSet& abc() {
  static const FinSet s = make_carrier("A", {"a", "b", "c"});
  return s;
}

w::WTree nil(const w::WSpec& spec) { return w::sup(spec, Value::inl(Value::star()), {}); }

w::WTree cons(const w::WSpec& spec, const Value& head, const w::WTree& tail) {
  return w::sup(spec, Value::inr(head), {{Value::star(), tail}});
}

// Unfolding oracle: walks children directly instead of going through wfold.
std::size_t count_nodes(const w::WTree& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.branch_count(); ++i) n += count_nodes(t.child(i));
  return n;
}

std::size_t count_leaves(const w::WTree& t) {
  if (t.is_leaf()) return 1;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.branch_count(); ++i) n += count_leaves(t.child(i));
  return n;
}

w::WTree random_rhythm(Rng& rng, int depth) {
  const std::size_t n = depth <= 0 ? 0 : rng.below(4);
  w::RhythmSpec node{Rational(1 + static_cast<long>(rng.below(12)), 1 + static_cast<long>(rng.below(4))), {}};
  std::vector<w::WTree> children;
  for (std::size_t k = 0; k < n; ++k) {
    children.push_back(random_rhythm(rng, depth - 1));
    node.factors.push_back(w::rhythm_node(children.back()).duration);
  }
  return w::rhythm_tree(node, children);
}

}  // namespace

TEST(ListEncoding, EmptyAndSingleton) {
  const auto spec = w::list_spec(abc());
  const auto empty = nil(spec);
  EXPECT_TRUE(empty.is_leaf());
  EXPECT_TRUE(w::to_list(empty).empty());
  const auto single = cons(spec, abc()[0], empty);
  EXPECT_EQ(w::to_list(single), std::vector<Value>{abc()[0]});
  EXPECT_EQ(single.child(0), empty);
}

TEST(ListEncoding, NestedSupIsTheListABC) {
  const auto spec = w::list_spec(abc());
  const auto tree = cons(spec, abc()[0], cons(spec, abc()[1], cons(spec, abc()[2], nil(spec))));
  EXPECT_EQ(w::to_list(tree), abc().elements());
  // Oracle: count of inr nodes along the spine.
  std::size_t inr = 0;
  for (auto t = tree; !t.is_leaf(); t = t.child(0)) inr += t.label().kind() == Value::Kind::Inr;
  EXPECT_EQ(inr, 3u);
  EXPECT_EQ(w::list_length(tree), inr);
  EXPECT_EQ(w::encode_list(spec, abc().elements()), tree);
}

TEST(ListEncoding, FoldOverEmptyListIsOneStep) {
  const auto spec = w::list_spec(abc());
  int calls = 0;
  const auto out = w::wfold<std::string>(nil(spec), [&](const Value& label, const auto& sub) {
    ++calls;
    EXPECT_TRUE(sub.empty());
    return to_string(label);
  });
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(out, to_string(Value::inl(Value::star())));
}

TEST(Sup, RejectsMalformedNodes) {
  const auto spec = w::list_spec(abc());
  const auto empty = nil(spec);
  auto message = [](auto&& f) {
    try {
      f();
    } catch (const w::WError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message([&] { w::sup(spec, Value::inr(abc()[0]), {}); }).find("missing branch"), std::string::npos);
  EXPECT_NE(message([&] { w::sup(spec, Value::inl(Value::star()), {{Value::star(), empty}}); }).find("extra branch"),
            std::string::npos);
  EXPECT_NE(message([&] {
              w::sup(spec, Value::inr(abc()[0]), {{Value::star(), empty}, {Value::star(), empty}});
            }).find("duplicate branch"),
            std::string::npos);
  const auto stranger = make_carrier("B", {"z"})[0];
  EXPECT_NE(message([&] { w::sup(spec, Value::inr(stranger), {{Value::star(), empty}}); }).find("not in the label type"),
            std::string::npos);
}

TEST(Adopt, AuditsEveryNode) {
  const auto spec = w::list_spec(abc());
  const auto good = w::encode_list(spec, {abc()[2], abc()[1]});
  EXPECT_EQ(w::adopt(spec, good.value()), good);
  const auto bad = Value::tree(Value::inr(abc()[0]), {{Value::star(), Value::tree(Value::inr(abc()[1]), {})}});
  EXPECT_THROW(w::adopt(spec, bad), w::WError);
  EXPECT_THROW(w::adopt(spec, Value::star()), w::WError);
}

TEST(SpecFromType, ListTypeInAStructure) {
  const auto st = music::cyclic_group(3);
  const auto G = TypeExpr::base("G");
  const auto lists = TypeExpr::w("u", TypeExpr::coproduct(TypeExpr::unit(), G),
                                 TypeExpr::case_of(Term::var("u"), TypeExpr::zero(), TypeExpr::unit()));
  const auto spec = w::spec_from_type(st, lists);
  const auto& g = st.carriers.at("G");
  const auto tree = w::sup(spec, Value::inr(g[1]), {{Value::star(), w::sup(spec, Value::inl(Value::star()), {})}});
  EXPECT_EQ(w::to_list(tree), std::vector<Value>{g[1]});
  EXPECT_THROW(w::spec_from_type(st, G), w::WError);
}

TEST(Rhythm, NineAndAHalfTreeChecks) {
  const auto tree = w::parse_rhythm(kNineAndAHalf);
  EXPECT_EQ(w::rhythm_node(tree).duration, Rational(19, 2));
  EXPECT_EQ(w::rhythm_node(tree).factors, (std::vector<Rational>{2, Rational(5, 2), 3}));
  EXPECT_EQ(w::adopt(w::rhythm_spec(), tree.value()), tree);
  EXPECT_EQ(w::leaf_count(tree), 7u);
  EXPECT_EQ(count_leaves(tree), 7u);
  EXPECT_EQ(w::print_rhythm(tree), kNineAndAHalf);
}

TEST(Rhythm, NineAndAHalfLeafDurations) {
  // Hand derivation: 19/2 splits 2 : 5/2 : 3 into 38/15, 19/6, 19/5, and so on down.
  const std::vector<Rational> expected{Rational(38, 15), Rational(19, 27), Rational(19, 54), Rational(19, 18),
                                       Rational(19, 18), Rational(57, 35), Rational(76, 35)};
  EXPECT_EQ(w::leaf_durations(w::parse_rhythm(kNineAndAHalf)), expected);
}

TEST(Rhythm, DecimalDurationsAreExact) {
  EXPECT_EQ(w::parse_rhythm("(rt 9.5 (rt 1) (rt 1))"), w::parse_rhythm("(rt 19/2 (rt 1) (rt 1))"));
}

TEST(Rhythm, SingleNodeIsALeaf) {
  const auto leaf = w::rhythm_tree({1, {}}, {});
  EXPECT_TRUE(leaf.is_leaf());
  EXPECT_EQ(w::leaf_count(leaf), 1u);
  EXPECT_EQ(w::leaf_durations(leaf), std::vector<Rational>{1});
}

TEST(Rhythm, Errors) {
  const auto leaf = w::rhythm_tree({1, {}}, {});
  EXPECT_THROW(w::rhythm_tree({5, {1, 1, 1}}, {leaf, leaf}), w::WError);
  EXPECT_THROW(w::rhythm_tree({0, {}}, {}), w::WError);
  EXPECT_THROW(w::rhythm_tree({2, {-1}}, {leaf}), w::WError);
  EXPECT_THROW(w::parse_rhythm("(rt 1/0)"), ParseError);
  EXPECT_THROW(w::parse_rhythm("(rt 1 (leaf))"), ParseError);
  EXPECT_THROW(w::parse_rhythm("(rt 1 (rt -2))"), w::WError);
}

// ---- properties ----

TEST(WTypesProperty, ListRoundTrip) {
  Rng rng(41);
  const auto spec = w::list_spec(abc());
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Value> items(rng.below(21));
    for (auto& x : items) x = rng.pick(abc().elements());
    const auto tree = w::encode_list(spec, items);
    EXPECT_EQ(w::to_list(tree), items);
    EXPECT_EQ(w::list_length(tree), items.size());
  }
}

TEST(WTypesProperty, CheckedTreesPassTheAudit) {
  Rng rng(43);
  const auto spec = w::rhythm_spec();
  for (int trial = 0; trial < 200; ++trial) {
    const auto tree = random_rhythm(rng, 4);
    // Audit fold: every node's branch keys are exactly its arity, in order.
    const bool total = w::wfold<bool>(tree, [&](const Value& label, const std::vector<std::pair<Value, bool>>& sub) {
      const auto arity = spec.arity(label);
      if (arity.size() != sub.size()) return false;
      for (std::size_t i = 0; i < sub.size(); ++i)
        if (!(sub[i].first == arity[i]) || !sub[i].second) return false;
      return true;
    });
    EXPECT_TRUE(total);
    EXPECT_EQ(w::adopt(spec, tree.value()), tree);
  }
}

TEST(WTypesProperty, FoldFusesUnfoldings) {
  Rng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tree = random_rhythm(rng, 4);
    const auto nodes = w::wfold<std::size_t>(tree, [](const Value&, const auto& sub) {
      return std::accumulate(sub.begin(), sub.end(), std::size_t{1},
                             [](std::size_t n, const auto& kv) { return n + kv.second; });
    });
    EXPECT_EQ(nodes, count_nodes(tree));
    EXPECT_EQ(w::leaf_count(tree), count_leaves(tree));
  }
}

TEST(WTypesProperty, RhythmPrintParseRoundTripAndConservation) {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tree = random_rhythm(rng, 4);
    EXPECT_EQ(w::parse_rhythm(w::print_rhythm(tree)), tree) << w::print_rhythm(tree);
    const auto leaves = w::leaf_durations(tree);
    EXPECT_EQ(leaves.size(), w::leaf_count(tree));
    EXPECT_EQ(std::accumulate(leaves.begin(), leaves.end(), Rational(0)), w::rhythm_node(tree).duration);
  }
}
