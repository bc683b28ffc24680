#include "mulingua/wtypes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mulingua/sexpr.hpp"

namespace mulingua::w {

WTree sup(const WSpec& spec, const Value& label, const std::vector<std::pair<Value, WTree>>& branches) {
  if (!spec.is_label(label)) throw WError("label " + to_string(label) + " is not in the label type of " + spec.name);
  const auto arity = spec.arity(label);
  std::map<Value, const WTree*> given;
  for (const auto& [k, t] : branches) {
    if (!arity.contains(k)) throw WError("extra branch " + to_string(k) + " for label " + to_string(label));
    if (!given.emplace(k, &t).second) throw WError("duplicate branch " + to_string(k));
  }
  std::vector<Value::Entry> entries;
  entries.reserve(arity.size());
  for (const auto& k : arity) {
    auto it = given.find(k);
    if (it == given.end()) throw WError("missing branch " + to_string(k) + " for label " + to_string(label));
    entries.emplace_back(k, it->second->value());
  }
  return WTree(Value::tree(label, std::move(entries)));
}

WTree adopt(const WSpec& spec, const Value& tree) {
  if (tree.kind() != Value::Kind::Tree) throw WError(to_string(tree) + " is not a tree");
  std::vector<std::pair<Value, WTree>> branches;
  for (const auto& [k, sub] : tree.entries()) branches.emplace_back(k, adopt(spec, sub));
  auto checked = sup(spec, tree.label(), branches);
  if (!(checked.value() == tree)) throw WError("branches of " + to_string(tree) + " are not in arity order");
  return checked;
}

WSpec list_spec(const FinSet& elements) {
  WSpec spec;
  spec.name = "List";
  spec.is_label = [elements](const Value& u) {
    if (u.kind() == Value::Kind::Inl) return u.inner().kind() == Value::Kind::Star;
    return u.kind() == Value::Kind::Inr && elements.contains(u.inner());
  };
  spec.arity = [](const Value& u) {
    if (u.kind() == Value::Kind::Inl) return FinSet{};
    return FinSet({Value::star()});
  };
  return spec;
}

WTree encode_list(const WSpec& spec, const std::vector<Value>& items) {
  auto t = sup(spec, Value::inl(Value::star()), {});
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = sup(spec, Value::inr(*it), {{Value::star(), t}});
  return t;
}

std::vector<Value> to_list(const WTree& t) {
  using Out = std::vector<Value>;
  return wfold<Out>(t, [](const Value& label, const std::vector<std::pair<Value, Out>>& sub) {
    if (label.kind() == Value::Kind::Inl) return Out{};
    Out out{label.inner()};
    out.insert(out.end(), sub[0].second.begin(), sub[0].second.end());
    return out;
  });
}

std::size_t list_length(const WTree& t) {
  return wfold<std::size_t>(t, [](const Value& label, const std::vector<std::pair<Value, std::size_t>>& sub) {
    return label.kind() == Value::Kind::Inl ? std::size_t{0} : 1 + sub[0].second;
  });
}

namespace {

bool positive_rational(const Value& v) { return v.kind() == Value::Kind::Rat && v.rational() > 0; }

}  // namespace

WSpec rhythm_spec() {
  WSpec spec;
  spec.name = "Rhythm";
  spec.is_label = [](const Value& l) {
    if (l.kind() != Value::Kind::Pair || !positive_rational(l.first())) return false;
    if (l.second().kind() != Value::Kind::Seq) return false;
    const auto& fs = l.second().items();
    return std::all_of(fs.begin(), fs.end(), positive_rational);
  };
  spec.arity = [](const Value& l) { return make_numbered_carrier("Fin", l.second().items().size()); };
  return spec;
}

Value rhythm_label(const RhythmSpec& node) {
  std::vector<Value> fs;
  for (const auto& r : node.factors) fs.push_back(Value::rational(r));
  return Value::pair(Value::rational(node.duration), Value::sequence(std::move(fs)));
}

WTree rhythm_tree(const RhythmSpec& node, const std::vector<WTree>& children) {
  if (children.size() != node.factors.size())
    throw WError("rhythm node with " + std::to_string(node.factors.size()) + " factor(s) given " +
                 std::to_string(children.size()) + " child(ren)");
  if (node.duration <= 0) throw WError("rhythm duration must be positive");
  for (const auto& r : node.factors)
    if (r <= 0) throw WError("rhythm factors must be positive");
  const auto spec = rhythm_spec();
  const auto label = rhythm_label(node);
  const auto keys = spec.arity(label);
  std::vector<std::pair<Value, WTree>> branches;
  for (std::size_t k = 0; k < children.size(); ++k) branches.emplace_back(keys[k], children[k]);
  return sup(spec, label, branches);
}

RhythmSpec rhythm_node(const WTree& t) {
  RhythmSpec node{t.label().first().rational(), {}};
  for (const auto& r : t.label().second().items()) node.factors.push_back(r.rational());
  return node;
}

namespace {

struct Parsed {
  Rational number;
  WTree tree;
};

Parsed parse_node(const SExpr& e) {
  if (!e.has_head("rt") || e.size() < 2) parse_fail(e, "expected (rt NUMBER child ...)");
  if (!e[1].is_atom()) parse_fail(e[1], "expected a rational number");
  auto q = parse_rational(e[1].atom);
  if (!q) parse_fail(e[1], "malformed rational '" + e[1].atom + "'");
  RhythmSpec node{*q, {}};
  std::vector<WTree> children;
  for (std::size_t i = 2; i < e.size(); ++i) {
    auto child = parse_node(e[i]);
    node.factors.push_back(child.number);
    children.push_back(std::move(child.tree));
  }
  return {*q, rhythm_tree(node, children)};
}

void print_node(std::ostream& os, const WTree& t) {
  os << "(rt " << t.label().first();
  for (std::size_t i = 0; i < t.branch_count(); ++i) {
    os << ' ';
    print_node(os, t.child(i));
  }
  os << ')';
}

void leaves(const WTree& t, Rational absolute, std::vector<Rational>& out) {
  if (t.is_leaf()) {
    out.push_back(absolute);
    return;
  }
  const auto node = rhythm_node(t);
  Rational total = 0;
  for (const auto& r : node.factors) total += r;
  for (std::size_t k = 0; k < t.branch_count(); ++k) leaves(t.child(k), absolute * node.factors[k] / total, out);
}

}  // namespace

WTree parse_rhythm(std::string_view text) { return parse_node(read_sexpr(text)).tree; }

std::string print_rhythm(const WTree& t) {
  std::ostringstream os;
  print_node(os, t);
  return os.str();
}

std::size_t leaf_count(const WTree& t) {
  return wfold<std::size_t>(t, [](const Value&, const std::vector<std::pair<Value, std::size_t>>& sub) {
    if (sub.empty()) return std::size_t{1};
    std::size_t n = 0;
    for (const auto& [_, k] : sub) n += k;
    return n;
  });
}

std::vector<Rational> leaf_durations(const WTree& t) {
  std::vector<Rational> out;
  leaves(t, t.label().first().rational(), out);
  return out;
}

WSpec spec_from_type(const Structure& st, const TypeExpr& w_type, const Environment& env, const EvalOptions& opts) {
  if (w_type.kind() != TypeExpr::Kind::W) throw WError(to_string(w_type) + " is not a W-type");
  const auto labels = interpret_type(st, env, w_type.index(), opts);
  WSpec spec;
  spec.name = to_string(w_type);
  spec.is_label = [labels](const Value& a) { return labels.contains(a); };
  spec.arity = [&st, w_type, env, opts](const Value& a) {
    auto extended = env;
    extended.emplace_back(w_type.binder(), a);
    return interpret_type(st, extended, w_type.body(), opts);
  };
  return spec;
}

}  // namespace mulingua::w
