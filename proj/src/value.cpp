#include "mulingua/value.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mulingua {

struct Value::Node {
  Kind kind = Kind::Star;
  std::string carrier;
  std::string name;
  std::size_t index = 0;
  bool truth = false;
  Rational q;
  std::vector<Value> children;  // pair components, injected value, tree label
  std::vector<Entry> entries;
  std::vector<Value> items;
};

std::shared_ptr<const Value::Node> Value::star_node() {
  static const auto node = std::make_shared<const Node>();
  return node;
}

namespace {

int rank(Value::Kind k) {
  switch (k) {
    case Value::Kind::Atom: return 0;
    case Value::Kind::Star: return 1;
    case Value::Kind::Truth: return 2;
    case Value::Kind::Pair: return 3;
    case Value::Kind::Inl: return 4;
    case Value::Kind::Inr: return 5;
    case Value::Kind::Table:
    case Value::Kind::Section: return 6;
    case Value::Kind::Tree: return 7;
    case Value::Kind::Rat: return 8;
    case Value::Kind::Seq: return 9;
  }
  return 10;
}

void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(what);
}

}  // namespace

Value::Value() : node_(star_node()) {}

Value Value::atom(std::string carrier, std::size_t index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->carrier = std::move(carrier);
  n->index = index;
  n->name = name.empty() ? std::to_string(index) : std::move(name);
  return Value(std::move(n));
}

Value Value::star() { return Value(); }

Value Value::truth(bool b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Truth;
  n->truth = b;
  return Value(std::move(n));
}

Value Value::pair(Value first, Value second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->children = {std::move(first), std::move(second)};
  return Value(std::move(n));
}

Value Value::inl(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inl;
  n->children = {std::move(v)};
  return Value(std::move(n));
}

Value Value::inr(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inr;
  n->children = {std::move(v)};
  return Value(std::move(n));
}

Value Value::table(std::vector<Entry> entries) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Table;
  n->entries = std::move(entries);
  return Value(std::move(n));
}

Value Value::section(std::vector<Entry> entries) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Section;
  n->entries = std::move(entries);
  return Value(std::move(n));
}

Value Value::tree(Value label, std::vector<Entry> branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tree;
  n->children = {std::move(label)};
  n->entries = std::move(branches);
  return Value(std::move(n));
}

Value Value::rational(Rational q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rat;
  n->q = q;
  return Value(std::move(n));
}

Value Value::sequence(std::vector<Value> items) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->items = std::move(items);
  return Value(std::move(n));
}

Value::Kind Value::kind() const { return node_->kind; }

const std::string& Value::carrier() const {
  require(kind() == Kind::Atom, "carrier() on non-atom");
  return node_->carrier;
}
std::size_t Value::index() const {
  require(kind() == Kind::Atom, "index() on non-atom");
  return node_->index;
}
const std::string& Value::name() const {
  require(kind() == Kind::Atom, "name() on non-atom");
  return node_->name;
}
bool Value::truth() const {
  require(kind() == Kind::Truth, "truth() on non-truth value");
  return node_->truth;
}
const Value& Value::first() const {
  require(kind() == Kind::Pair, "first() on non-pair");
  return node_->children[0];
}
const Value& Value::second() const {
  require(kind() == Kind::Pair, "second() on non-pair");
  return node_->children[1];
}
const Value& Value::inner() const {
  require(kind() == Kind::Inl || kind() == Kind::Inr, "inner() on non-injection");
  return node_->children[0];
}
const std::vector<Value::Entry>& Value::entries() const {
  require(is_function() || kind() == Kind::Tree, "entries() on non-function");
  return node_->entries;
}
const Value& Value::label() const {
  require(kind() == Kind::Tree, "label() on non-tree");
  return node_->children[0];
}
Rational Value::rational() const {
  require(kind() == Kind::Rat, "rational() on non-rational");
  return node_->q;
}
const std::vector<Value>& Value::items() const {
  require(kind() == Kind::Seq, "items() on non-sequence");
  return node_->items;
}

std::optional<Value> Value::apply(const Value& arg) const {
  if (!is_function()) return std::nullopt;
  for (const auto& [k, v] : node_->entries)
    if (k == arg) return v;
  return std::nullopt;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const int ra = rank(a.kind()), rb = rank(b.kind());
  if (ra != rb) return ra <=> rb;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  switch (x.kind) {
    case Value::Kind::Atom:
      if (auto c = x.carrier <=> y.carrier; c != 0) return c;
      return x.index <=> y.index;
    case Value::Kind::Star:
      return std::strong_ordering::equal;
    case Value::Kind::Truth:
      return x.truth <=> y.truth;
    case Value::Kind::Pair:
    case Value::Kind::Inl:
    case Value::Kind::Inr:
      return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                    y.children.begin(), y.children.end());
    case Value::Kind::Tree:
      if (auto c = x.children[0] <=> y.children[0]; c != 0) return c;
      [[fallthrough]];
    case Value::Kind::Table:
    case Value::Kind::Section:
      return std::lexicographical_compare_three_way(
          x.entries.begin(), x.entries.end(), y.entries.begin(), y.entries.end(),
          [](const Value::Entry& p, const Value::Entry& q) {
            if (auto c = p.first <=> q.first; c != 0) return c;
            return p.second <=> q.second;
          });
    case Value::Kind::Rat:
      if (x.q == y.q) return std::strong_ordering::equal;
      return x.q < y.q ? std::strong_ordering::less : std::strong_ordering::greater;
    case Value::Kind::Seq:
      return std::lexicographical_compare_three_way(x.items.begin(), x.items.end(),
                                                    y.items.begin(), y.items.end());
  }
  return std::strong_ordering::equal;
}

namespace {

bool is_predicate_table(const Value& v) {
  if (!v.is_function() || v.entries().empty()) return false;
  return std::all_of(v.entries().begin(), v.entries().end(),
                     [](const Value::Entry& e) { return e.second.kind() == Value::Kind::Truth; });
}

void render(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Atom: os << v.name(); return;
    case Value::Kind::Star: os << '*'; return;
    case Value::Kind::Truth: os << (v.truth() ? "true" : "false"); return;
    case Value::Kind::Pair:
      os << "(pair ";
      render(os, v.first());
      os << ' ';
      render(os, v.second());
      os << ')';
      return;
    case Value::Kind::Inl:
    case Value::Kind::Inr:
      os << (v.kind() == Value::Kind::Inl ? "(inl " : "(inr ");
      render(os, v.inner());
      os << ')';
      return;
    case Value::Kind::Table:
    case Value::Kind::Section:
      if (v.kind() == Value::Kind::Table && is_predicate_table(v)) {
        os << "(set";
        for (const auto& [k, t] : v.entries()) {
          if (!t.truth()) continue;
          os << ' ';
          render(os, k);
        }
        os << ')';
        return;
      }
      os << (v.kind() == Value::Kind::Table ? "(table" : "(section");
      for (const auto& [k, x] : v.entries()) {
        os << " (";
        render(os, k);
        os << ' ';
        render(os, x);
        os << ')';
      }
      os << ')';
      return;
    case Value::Kind::Tree:
      os << "(sup ";
      render(os, v.label());
      for (const auto& [k, x] : v.entries()) {
        os << " (";
        render(os, k);
        os << ' ';
        render(os, x);
        os << ')';
      }
      os << ')';
      return;
    case Value::Kind::Rat: {
      const auto q = v.rational();
      os << q.numerator();
      if (q.denominator() != 1) os << '/' << q.denominator();
      return;
    }
    case Value::Kind::Seq:
      os << "(list";
      for (const auto& x : v.items()) {
        os << ' ';
        render(os, x);
      }
      os << ')';
      return;
  }
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto number = [](std::string_view s) {
    std::int64_t n = 0;
    for (char c : s) {
      if (n > (std::numeric_limits<std::int64_t>::max() - 9) / 10) return std::optional<std::int64_t>{};
      n = n * 10 + (c - '0');
    }
    return std::optional<std::int64_t>{n};
  };
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  Rational q;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) return std::nullopt;
    auto n = number(num), d = number(den);
    if (!n || !d || *d == 0) return std::nullopt;
    q = Rational(*n, *d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (!digits(whole) || !digits(frac) || frac.size() > 15) return std::nullopt;
    auto w = number(whole), f = number(frac);
    if (!w || !f) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    q = Rational(*w) + Rational(*f, scale);
  } else {
    if (!digits(text)) return std::nullopt;
    auto n = number(text);
    if (!n) return std::nullopt;
    q = Rational(*n);
  }
  return negative ? -q : q;
}

std::string to_string(const Value& v) {
  std::ostringstream os;
  render(os, v);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  render(os, v);
  return os;
}

FinSet::FinSet(std::vector<Value> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!positions_.emplace(elements_[i], i).second)
      throw std::invalid_argument("duplicate element in finite set: " + to_string(elements_[i]));
  }
}

std::optional<std::size_t> FinSet::index_of(const Value& v) const {
  auto it = positions_.find(v);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

FinSet make_carrier(const std::string& type_name, const std::vector<std::string>& names) {
  std::vector<Value> elems;
  elems.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) elems.push_back(Value::atom(type_name, i, names[i]));
  return FinSet(std::move(elems));
}

FinSet make_numbered_carrier(const std::string& type_name, std::size_t n) {
  std::vector<Value> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back(Value::atom(type_name, i));
  return FinSet(std::move(elems));
}

}  // namespace mulingua
