#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace mulingua {

using Rational = boost::rational<std::int64_t>;

/// Semantic element of a finite-set model.
///
/// Values are immutable and cheap to copy (shared node). Table and Section
/// values are both function graphs: a section is the dependent case, and the
/// two compare equal when their graphs agree.
class Value {
 public:
  enum class Kind { Atom, Star, Truth, Pair, Inl, Inr, Table, Section, Tree, Rat, Seq };
  using Entry = std::pair<Value, Value>;

  Value();  // the unit element

  static Value atom(std::string carrier, std::size_t index, std::string name = {});
  static Value star();
  static Value truth(bool b);
  static Value pair(Value first, Value second);
  static Value inl(Value v);
  static Value inr(Value v);
  /// Entries must have pairwise distinct keys; order is preserved.
  static Value table(std::vector<Entry> entries);
  static Value section(std::vector<Entry> entries);
  static Value tree(Value label, std::vector<Entry> branches);
  static Value rational(Rational q);
  static Value sequence(std::vector<Value> items);

  Kind kind() const;
  bool is_function() const { return kind() == Kind::Table || kind() == Kind::Section; }

  // Atom
  const std::string& carrier() const;
  std::size_t index() const;
  const std::string& name() const;
  // Truth
  bool truth() const;
  // Pair
  const Value& first() const;
  const Value& second() const;
  // Inl / Inr
  const Value& inner() const;
  // Table / Section / Tree branches
  const std::vector<Entry>& entries() const;
  // Tree
  const Value& label() const;
  // Rat
  Rational rational() const;
  // Seq
  const std::vector<Value>& items() const;

  /// Function application on Table/Section values; nullopt when the argument is outside the graph.
  std::optional<Value> apply(const Value& arg) const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  static std::shared_ptr<const Node> star_node();
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// S-expression rendering. Prop-valued tables print as (set members...).
std::string to_string(const Value& v);
std::ostream& operator<<(std::ostream& os, const Value& v);

/// Reads "n", "-n", "n/d" or a decimal "a.b"; nullopt on anything else or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Finite carrier: distinct values in a fixed canonical order.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<Value> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Value& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  const std::vector<Value>& elements() const { return elements_; }

  std::optional<std::size_t> index_of(const Value& v) const;
  bool contains(const Value& v) const { return positions_.count(v) != 0; }

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Value> elements_;
  std::map<Value, std::size_t> positions_;
};

/// Carrier of atoms named after `names`, tagged with the carrier `type_name`.
FinSet make_carrier(const std::string& type_name, const std::vector<std::string>& names);
/// Carrier of atoms "0".."n-1".
FinSet make_numbered_carrier(const std::string& type_name, std::size_t n);

}  // namespace mulingua
