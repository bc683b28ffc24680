#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mulingua/semantics.hpp"
#include "mulingua/value.hpp"

namespace mulingua::w {

class WError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Label type and arity family of a W-type, given semantically.
struct WSpec {
  std::string name;
  std::function<bool(const Value&)> is_label;
  std::function<FinSet(const Value&)> arity;
};

/// A checked well-founded tree: a Tree value whose branches are total on the arity of its label.
class WTree {
 public:
  const Value& value() const { return node_; }
  const Value& label() const { return node_.label(); }
  const std::vector<Value::Entry>& branches() const { return node_.entries(); }
  std::size_t branch_count() const { return node_.entries().size(); }
  WTree child(std::size_t i) const { return WTree(node_.entries()[i].second); }
  bool is_leaf() const { return node_.entries().empty(); }

  friend bool operator==(const WTree& a, const WTree& b) { return a.node_ == b.node_; }

 private:
  friend WTree sup(const WSpec&, const Value&, const std::vector<std::pair<Value, WTree>>&);
  friend WTree adopt(const WSpec&, const Value&);
  explicit WTree(Value v) : node_(std::move(v)) {}
  Value node_;
};

/// Checked constructor. Branches may be given in any order; they are stored in arity order.
WTree sup(const WSpec& spec, const Value& label, const std::vector<std::pair<Value, WTree>>& branches);

/// Audits an arbitrary Tree value against `spec` at every node.
WTree adopt(const WSpec& spec, const Value& tree);

/// Structural recursion. `step(label, results)` receives one (branch key, result) per branch in arity order.
template <class R, class Step>
R wfold(const WTree& t, Step&& step) {
  std::vector<std::pair<Value, R>> results;
  results.reserve(t.branch_count());
  for (std::size_t i = 0; i < t.branch_count(); ++i)
    results.emplace_back(t.branches()[i].first, wfold<R>(t.child(i), step));
  return step(t.label(), results);
}

// ---- lists: W(u : 1 + A). case u of inl -> 0 | inr -> 1 ----

WSpec list_spec(const FinSet& elements);
WTree encode_list(const WSpec& spec, const std::vector<Value>& items);
std::vector<Value> to_list(const WTree& t);
std::size_t list_length(const WTree& t);

// ---- rhythm trees: labels (d, [r1 .. rn]) with arity Fin(n) ----

struct RhythmSpec {
  Rational duration;
  std::vector<Rational> factors;
};

WSpec rhythm_spec();
/// Label value (pair d (list r1 .. rn)).
Value rhythm_label(const RhythmSpec& node);
WTree rhythm_tree(const RhythmSpec& node, const std::vector<WTree>& children);
RhythmSpec rhythm_node(const WTree& t);

/// Reads (rt D child ...); a node's factor list is the list of its children's numbers.
/// Throws ParseError on malformed input and WError on non-positive numbers.
WTree parse_rhythm(std::string_view text);
std::string print_rhythm(const WTree& t);

std::size_t leaf_count(const WTree& t);
/// Absolute leaf durations, each child receiving d * r_k / sum(r) of its parent's absolute
/// duration. Extension: proportional factors need not sum to the duration.
std::vector<Rational> leaf_durations(const WTree& t);

/// WSpec of a W-type interpreted in a structure (labels and arities from interpret_type).
/// The returned arity function refers to `st`, which must outlive the spec.
WSpec spec_from_type(const Structure& st, const TypeExpr& w_type, const Environment& env = {},
                     const EvalOptions& opts = {});

}  // namespace mulingua::w
