#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mulingua/semantics.hpp"

namespace mulingua::gen {

struct Rng {
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  std::mt19937 gen;
};

/// Types A, B; f : A B -> A; g : A -> B; c : A; relations R(A, B), P(A).
inline Signature two_sorted_signature() {
  const auto A = TypeExpr::base("A"), B = TypeExpr::base("B");
  return {"TWO",
          {"A", "B"},
          {{"f", {A, B}, A}, {"g", {A}, B}, {"c", {}, A}},
          {{"R", {A, B}}, {"P", {A}}}};
}

/// Random total tables over carriers of the given sizes (na >= 1 so that c has a value).
inline Structure random_two_sorted_structure(Rng& rng, std::size_t na, std::size_t nb) {
  Structure st;
  st.name = "two";
  st.signature = two_sorted_signature();
  const auto a = make_numbered_carrier("A", na), b = make_numbered_carrier("B", nb);
  st.carriers = {{"A", a}, {"B", b}};
  for (const auto& x : a)
    for (const auto& y : b) {
      st.fun_tables["f"][{x, y}] = a[rng.below(na)];
      if (rng.coin()) st.rel_tables["R"].insert({x, y});
    }
  for (const auto& x : a) {
    if (nb) st.fun_tables["g"][{x}] = b[rng.below(nb)];
    if (rng.coin()) st.rel_tables["P"].insert({x});
  }
  st.fun_tables["c"][{}] = a[rng.below(na)];
  st.fun_tables["g"];
  st.rel_tables["R"];
  st.rel_tables["P"];
  return st;
}

inline TypeExpr random_type(Rng& rng, int depth) {
  static const std::vector<TypeExpr> leaves{TypeExpr::base("A"), TypeExpr::base("B"), TypeExpr::unit(),
                                            TypeExpr::prop()};
  if (depth <= 0 || rng.coin(0.5)) return rng.pick(leaves);
  switch (rng.below(3)) {
    case 0:
      return TypeExpr::product(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 1:
      return TypeExpr::coproduct(random_type(rng, depth - 1), random_type(rng, depth - 1));
    default:
      return TypeExpr::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1));
  }
}

/// Formula over the two-sorted signature using only variables of `ctx` at base types.
inline Formula random_formula(Rng& rng, const Context& ctx, int depth, bool quantifiers = true);

/// A term of `type` that checks in `ctx` over two_sorted_signature(). Binder names come from a
/// small pool so that substitution meets shadowing and capture.
inline Term random_term(Rng& rng, const Context& ctx, const TypeExpr& type, int depth) {
  using K = TypeExpr::Kind;
  static const std::vector<std::string> pool{"x", "y", "z"};
  std::vector<Term> vars;
  for (const auto& e : ctx.entries)
    if (alpha_equal(*ctx.lookup(e.var), type) && ctx.lookup(e.var) == &e.type) vars.push_back(Term::var(e.var));
  const bool stop = depth <= 0;
  if (!vars.empty() && (stop || rng.coin(0.3))) return rng.pick(vars);
  switch (type.kind()) {
    case K::Base:
      if (type.name() == "A") {
        if (stop) return Term::var("c");
        switch (rng.below(4)) {
          case 0:
            return Term::app(Term::var("f"), {random_term(rng, ctx, type, depth - 1),
                                              random_term(rng, ctx, TypeExpr::base("B"), depth - 1)});
          case 1: {
            const auto other = random_type(rng, 1);
            return Term::proj1(Term::pair(random_term(rng, ctx, type, depth - 1),
                                          Term::ann(random_term(rng, ctx, other, depth - 1), other)));
          }
          case 2: {
            const auto dom = random_type(rng, 1);
            const auto& x = rng.pick(pool);
            auto fn = Term::lambda(x, dom, random_term(rng, ctx.extended(x, dom), type, depth - 1));
            return Term::app(fn, {random_term(rng, ctx, dom, depth - 1)});
          }
          default:
            return Term::var("c");
        }
      }
      return Term::app(Term::var("g"), {random_term(rng, ctx, TypeExpr::base("A"), std::max(depth - 1, 0))});
    case K::Unit:
      return Term::star();
    case K::Prop:
      if (stop || rng.coin()) {
        if (rng.coin())
          return Term::app(Term::var("P"), {random_term(rng, ctx, TypeExpr::base("A"), std::max(depth - 1, 0))});
        return Term::formula(rng.coin() ? Formula::top() : Formula::bottom());
      }
      return Term::formula(random_formula(rng, ctx, depth - 1, false));
    case K::Product:
      return Term::pair(random_term(rng, ctx, type.left(), depth - 1), random_term(rng, ctx, type.right(), depth - 1));
    case K::Coproduct:
      return rng.coin() ? Term::inl(random_term(rng, ctx, type.left(), depth - 1))
                        : Term::inr(random_term(rng, ctx, type.right(), depth - 1));
    case K::Arrow: {
      const auto& x = rng.pick(pool);
      return Term::lambda(x, type.left(), random_term(rng, ctx.extended(x, type.left()), type.right(), depth - 1));
    }
    default:
      return Term::star();
  }
}

inline Formula random_formula(Rng& rng, const Context& ctx, int depth, bool quantifiers) {
  auto term_of = [&](const char* base) { return random_term(rng, ctx, TypeExpr::base(base), 1); };
  if (depth <= 0 || rng.coin(0.25)) {
    switch (rng.below(5)) {
      case 0:
        return Formula::rel("R", {term_of("A"), term_of("B")});
      case 1:
        return Formula::rel("P", {term_of("A")});
      case 2:
        return Formula::eq(TypeExpr::base("A"), term_of("A"), term_of("A"));
      case 3:
        return Formula::top();
      default:
        return Formula::bottom();
    }
  }
  const int d = depth - 1;
  switch (rng.below(quantifiers ? 6 : 4)) {
    case 0:
      return Formula::conj(random_formula(rng, ctx, d, quantifiers), random_formula(rng, ctx, d, quantifiers));
    case 1:
      return Formula::disj(random_formula(rng, ctx, d, quantifiers), random_formula(rng, ctx, d, quantifiers));
    case 2:
      return Formula::implies(random_formula(rng, ctx, d, quantifiers), random_formula(rng, ctx, d, quantifiers));
    case 3:
      return Formula::negation(random_formula(rng, ctx, d, quantifiers));
    default: {
      const std::string x = "q" + std::to_string(ctx.size());
      const auto t = TypeExpr::base(rng.coin() ? "A" : "B");
      const auto body = random_formula(rng, ctx.extended(x, t), d, quantifiers);
      return rng.coin() ? Formula::forall(x, t, body) : Formula::exists(x, t, body);
    }
  }
}

}  // namespace mulingua::gen
