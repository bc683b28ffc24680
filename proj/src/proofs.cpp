#include "mulingua/proofs.hpp"

#include <sstream>
#include <stdexcept>

namespace mulingua::proofs {

namespace {

using K = TypeExpr::Kind;

struct Search {
  const Structure& st;
  const EvalOptions& opts;
  Environment env;

  Inhabitation found(const TypeExpr& t, Value v) { return {ProofObject{std::move(v), t}, std::nullopt, {}}; }
  static Inhabitation none(std::string reason) { return {std::nullopt, std::nullopt, std::move(reason)}; }

  Inhabitation first_element(const TypeExpr& t) {
    const auto carrier = interpret_type(st, env, t, opts);
    if (carrier.empty()) return none(to_string(t) + " is empty");
    return found(t, carrier[0]);
  }

  Inhabitation run(const TypeExpr& t) {
    switch (t.kind()) {
      case K::Zero:
        return none("0 has no elements");
      case K::Unit:
        return found(t, Value::star());
      case K::Product: {
        auto a = run(t.left());
        if (!a) return none("left factor uninhabited: " + a.reason);
        auto b = run(t.right());
        if (!b) return none("right factor uninhabited: " + b.reason);
        return found(t, Value::pair(a.proof->value, b.proof->value));
      }
      case K::Coproduct: {
        auto a = run(t.left());
        if (a) return found(t, Value::inl(a.proof->value));
        auto b = run(t.right());
        if (b) return found(t, Value::inr(b.proof->value));
        return none("both summands uninhabited: " + a.reason + "; " + b.reason);
      }
      case K::Arrow:
      case K::Power: {
        const auto& dom = t.kind() == K::Arrow ? t.left() : t.inner();
        const auto cod = t.kind() == K::Arrow ? t.right() : TypeExpr::prop();
        auto d = run(dom);
        if (!d) return found(t, Value::table({}));
        auto c = run(cod);
        if (!c) return none("domain inhabited by " + to_string(d.proof->value) + " but codomain uninhabited: " + c.reason);
        std::vector<Value::Entry> entries;
        for (const auto& a : interpret_type(st, env, dom, opts)) entries.emplace_back(a, c.proof->value);
        return found(t, Value::table(std::move(entries)));
      }
      case K::Pi: {
        std::vector<Value::Entry> entries;
        for (const auto& a : interpret_type(st, env, t.index(), opts)) {
          env.emplace_back(t.binder(), a);
          auto fiber = run(t.body());
          env.pop_back();
          if (!fiber) {
            auto r = none("fiber " + t.binder() + " = " + to_string(a) + " is empty: " + fiber.reason);
            r.failing_index = a;
            return r;
          }
          entries.emplace_back(a, fiber.proof->value);
        }
        return found(t, Value::section(std::move(entries)));
      }
      case K::Sigma: {
        const auto index = interpret_type(st, env, t.index(), opts);
        for (const auto& a : index) {
          env.emplace_back(t.binder(), a);
          auto fiber = run(t.body());
          env.pop_back();
          if (fiber) return found(t, Value::pair(a, fiber.proof->value));
        }
        if (index.empty()) return none("index " + to_string(t.index()) + " is empty");
        return none("every fiber over " + to_string(t.index()) + " is empty");
      }
      case K::W: {
        for (const auto& a : interpret_type(st, env, t.index(), opts)) {
          env.emplace_back(t.binder(), a);
          const auto arity = interpret_type(st, env, t.body(), opts);
          env.pop_back();
          if (arity.empty()) return found(t, Value::tree(a, {}));
        }
        return none("no label of " + to_string(t) + " has empty arity, so no finite tree exists");
      }
      case K::PropType:
        if (eval_formula(st, env, t.formula(), opts)) return found(t, Value::star());
        return none(to_string(t.formula()) + " is false");
      default:
        return first_element(t);
    }
  }
};

Term chord_literal(const Structure& st, const std::vector<Value>& chord) {
  auto pc = st.carriers.find("PC");
  if (pc == st.carriers.end()) throw std::invalid_argument("structure has no PC carrier");
  for (const auto& v : chord)
    if (!pc->second.contains(v)) throw std::invalid_argument("chord member " + to_string(v) + " is not a pitch class");
  std::vector<Value::Entry> entries;
  for (const auto& p : pc->second) {
    bool in = false;
    for (const auto& v : chord) in = in || v == p;
    entries.emplace_back(p, Value::truth(in));
  }
  return Term::lit(TypeExpr::power(TypeExpr::base("PC")), Value::table(std::move(entries)));
}

void render_into(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Pair:
      os << '(';
      render_into(os, v.first());
      os << ", ";
      render_into(os, v.second());
      os << ')';
      return;
    case Value::Kind::Inl:
    case Value::Kind::Inr:
      os << (v.kind() == Value::Kind::Inl ? "inl " : "inr ");
      render_into(os, v.inner());
      return;
    case Value::Kind::Table:
    case Value::Kind::Section: {
      os << '{';
      bool first = true;
      for (const auto& [k, x] : v.entries()) {
        if (!first) os << ", ";
        first = false;
        render_into(os, k);
        os << " ↦ ";
        render_into(os, x);
      }
      os << '}';
      return;
    }
    default:
      os << v;
  }
}

}  // namespace

Inhabitation inhabit(const Structure& st, const TypeExpr& t, const Environment& env, const EvalOptions& opts) {
  return Search{st, opts, env}.run(t);
}

TypeExpr to_type(const Formula& f) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::Top: return TypeExpr::unit();
    case FK::Bottom: return TypeExpr::zero();
    case FK::And: return TypeExpr::product(to_type(f.left()), to_type(f.right()));
    case FK::Or: return TypeExpr::coproduct(to_type(f.left()), to_type(f.right()));
    case FK::Implies: return TypeExpr::arrow(to_type(f.left()), to_type(f.right()));
    case FK::Not: return TypeExpr::arrow(to_type(f.body()), TypeExpr::zero());
    case FK::Forall: return TypeExpr::pi(f.name(), f.type(), to_type(f.body()));
    case FK::Exists: return TypeExpr::sigma(f.name(), f.type(), to_type(f.body()));
    default: return TypeExpr::proposition(f);
  }
}

TypeExpr all_interval_type(const Structure& st, const std::vector<Value>& chord) {
  const auto c = chord_literal(st, chord);
  const auto member = TypeExpr::subtype(c);
  const auto p = Term::var("p");
  const auto ic = Term::call("intclass", {Term::call("pcint", {Term::proj1(p), Term::proj2(p)})});
  return TypeExpr::pi(
      "i", TypeExpr::base("IC"),
      TypeExpr::sigma("p", TypeExpr::product(member, member),
                      TypeExpr::proposition(Formula::eq(TypeExpr::base("IC"), ic, Term::var("i")))));
}

TypeExpr domfunc_leading_tone_type(const Structure& st, const Value& key) {
  auto keys = st.carriers.find("Key");
  if (keys == st.carriers.end() || !keys->second.contains(key))
    throw std::invalid_argument(to_string(key) + " is not a key of structure " + st.name);
  const auto k = Term::lit(TypeExpr::base("Key"), key);
  const auto dominant = TypeExpr::sigma("c", TypeExpr::base("Chord"),
                                        TypeExpr::proposition(Formula::rel("domfunc", {Term::var("c"), k})));
  return TypeExpr::pi("x", dominant,
                      TypeExpr::proposition(Formula::rel(
                          "contains", {Term::proj1(Term::var("x")), Term::call("lt", {k})})));
}

std::string render(const Value& proof) {
  std::ostringstream os;
  render_into(os, proof);
  return os.str();
}

}  // namespace mulingua::proofs
