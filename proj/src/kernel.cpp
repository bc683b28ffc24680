#include "mulingua/kernel.hpp"

#include <set>

namespace mulingua {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw TypeError(msg); }

std::string show(const TypeExpr& t) { return to_string(t); }
std::string show(const Term& t) { return to_string(t); }

}  // namespace

TypeExpr normalize(const TypeExpr& t) {
  using K = TypeExpr::Kind;
  switch (t.kind()) {
    case K::Power:
      return TypeExpr::arrow(normalize(t.inner()), TypeExpr::prop());
    case K::Case: {
      // Annotations and literals are transparent to the reduction.
      auto scrutinee = t.term();
      while (scrutinee.kind() == Term::Kind::Ann) scrutinee = scrutinee.sub(0);
      auto k = scrutinee.kind();
      if (k == Term::Kind::Lit) {
        const auto vk = scrutinee.value().kind();
        if (vk == Value::Kind::Inl) k = Term::Kind::Inl;
        if (vk == Value::Kind::Inr) k = Term::Kind::Inr;
      }
      if (k == Term::Kind::Inl) return normalize(t.left());
      if (k == Term::Kind::Inr) return normalize(t.right());
      break;
    }
    default:
      break;
  }
  if (t.node().types.empty()) return t;
  auto n = t.node();
  for (auto& c : n.types) c = normalize(c);
  return TypeExpr::from_node(std::move(n));
}

bool types_equal(const TypeExpr& a, const TypeExpr& b) { return alpha_equal(normalize(a), normalize(b)); }

namespace checker {

namespace {

std::string arity_message(const std::string& what, const std::string& name, std::size_t want, std::size_t got) {
  return "arity mismatch: " + what + " '" + name + "' expects " + std::to_string(want) + " argument(s), got " +
         std::to_string(got);
}

// Subtype(P) coerces into the domain of P.
TypeExpr carrier_type(const Signature& sig, const Context& ctx, const TypeExpr& t) {
  const auto n = normalize(t);
  if (n.kind() != TypeExpr::Kind::Subtype) return n;
  const auto pt = normalize(synth(sig, ctx, n.term()));
  if (pt.kind() != TypeExpr::Kind::Arrow) fail("subtype of non-predicate " + show(n.term()));
  return carrier_type(sig, ctx, pt.left());
}

bool convertible(const Signature& sig, const Context& ctx, const TypeExpr& got, const TypeExpr& want) {
  if (types_equal(got, want)) return true;
  if (normalize(got).kind() == TypeExpr::Kind::Subtype) return types_equal(carrier_type(sig, ctx, got), want);
  return false;
}

void check_args(const Signature& sig, const Context& ctx, const std::vector<Term>& args,
                const std::vector<TypeExpr>& domain) {
  for (std::size_t i = 0; i < args.size(); ++i) check(sig, ctx, args[i], domain[i]);
}

TypeExpr synth_symbol_call(const Signature& sig, const Context& ctx, const std::string& name,
                           const std::vector<Term>& args) {
  if (const auto* f = sig.find_fun(name)) {
    if (f->is_family()) fail("type family '" + name + "' used as a term");
    if (args.size() != f->arity()) fail(arity_message("function symbol", name, f->arity(), args.size()));
    check_args(sig, ctx, args, f->domain);
    return f->codomain;
  }
  if (const auto* r = sig.find_rel(name)) {
    if (args.size() != r->arity()) fail(arity_message("relation", name, r->arity(), args.size()));
    check_args(sig, ctx, args, r->arity_types);
    return TypeExpr::prop();
  }
  fail("unbound variable '" + name + "'");
}

std::vector<TypeExpr> tuple_components(TypeExpr t) {
  std::vector<TypeExpr> out;
  while (t.kind() == TypeExpr::Kind::Product) {
    out.push_back(t.left());
    t = normalize(t.right());
  }
  out.push_back(t);
  return out;
}

}  // namespace

void well_formed_type(const Signature& sig, const Context& ctx, const TypeExpr& t) {
  using K = TypeExpr::Kind;
  switch (t.kind()) {
    case K::Base:
      if (!sig.has_base(t.name())) fail("unknown base type '" + t.name() + "'");
      return;
    case K::Zero:
    case K::Unit:
    case K::Prop:
      return;
    case K::Universe:
      fail("level violation: Type may only appear as the codomain of a family symbol");
    case K::Product:
    case K::Coproduct:
    case K::Arrow:
      checker::well_formed_type(sig, ctx, t.left());
      checker::well_formed_type(sig, ctx, t.right());
      return;
    case K::Pi:
    case K::Sigma:
    case K::W:
      if (ctx.binds(t.binder())) fail("binder '" + t.binder() + "' shadows a variable already in scope");
      checker::well_formed_type(sig, ctx, t.index());
      checker::well_formed_type(sig, ctx.extended(t.binder(), t.index()), t.body());
      return;
    case K::Power:
      checker::well_formed_type(sig, ctx, t.inner());
      return;
    case K::Fin: {
      const auto bt = carrier_type(sig, ctx, synth(sig, ctx, t.term()));
      if (bt.kind() != K::Base)
        fail("fin bound " + show(t.term()) + " must be an element of a base type, got " + show(bt));
      return;
    }
    case K::Subtype: {
      const auto pt = normalize(synth(sig, ctx, t.term()));
      if (pt.kind() != K::Arrow || pt.right().kind() != K::Prop)
        fail("subtype of non-predicate " + show(t.term()) + " : " + show(pt));
      return;
    }
    case K::PropType:
      checker::well_formed_formula(sig, ctx, t.formula());
      return;
    case K::Family: {
      const auto* f = sig.find_fun(t.name());
      if (!f || !f->is_family()) fail("unknown type family '" + t.name() + "'");
      if (t.args().size() != f->arity()) fail(arity_message("type family", t.name(), f->arity(), t.args().size()));
      check_args(sig, ctx, t.args(), f->domain);
      return;
    }
    case K::Case: {
      const auto st = normalize(synth(sig, ctx, t.term()));
      if (st.kind() != K::Coproduct) fail("case on non-coproduct " + show(t.term()) + " : " + show(st));
      checker::well_formed_type(sig, ctx, t.left());
      checker::well_formed_type(sig, ctx, t.right());
      return;
    }
  }
}

TypeExpr synth(const Signature& sig, const Context& ctx, const Term& term) {
  using K = Term::Kind;
  switch (term.kind()) {
    case K::Var: {
      if (const auto* t = ctx.lookup(term.name())) return *t;
      if (const auto* f = sig.find_fun(term.name()); f && f->arity() > 0)
        fail(arity_message("function symbol", term.name(), f->arity(), 0));
      return synth_symbol_call(sig, ctx, term.name(), {});
    }
    case K::App: {
      const auto& head = term.head();
      const auto args = term.args();
      if (head.kind() == K::Var && !ctx.binds(head.name()) &&
          (sig.find_fun(head.name()) || sig.find_rel(head.name())))
        return synth_symbol_call(sig, ctx, head.name(), args);
      TypeExpr t = synth(sig, ctx, head);
      for (const auto& a : args) {
        const auto n = normalize(t);
        if (n.kind() == TypeExpr::Kind::Arrow) {
          check(sig, ctx, a, n.left());
          t = n.right();
        } else if (n.kind() == TypeExpr::Kind::Pi) {
          check(sig, ctx, a, n.index());
          t = substitute(n.body(), {{n.binder(), a}});
        } else {
          fail("application of non-function " + show(head) + " : " + show(n));
        }
      }
      return t;
    }
    case K::Pair:
      return TypeExpr::product(synth(sig, ctx, term.sub(0)), synth(sig, ctx, term.sub(1)));
    case K::Proj1:
    case K::Proj2: {
      const auto& p = term.sub(0);
      const auto t = normalize(synth(sig, ctx, p));
      if (t.kind() == TypeExpr::Kind::Product) return term.kind() == K::Proj1 ? t.left() : t.right();
      if (t.kind() == TypeExpr::Kind::Sigma) {
        if (term.kind() == K::Proj1) return t.index();
        return substitute(t.body(), {{t.binder(), Term::proj1(p)}});
      }
      fail("projection of non-product " + show(p) + " : " + show(t));
    }
    case K::TupleProj: {
      const auto t = normalize(synth(sig, ctx, term.sub(0)));
      if (t.kind() != TypeExpr::Kind::Product) fail("projection of non-product " + show(term.sub(0)) + " : " + show(t));
      const auto comps = tuple_components(t);
      if (term.index() < 1 || term.index() > comps.size())
        fail("tuple index " + std::to_string(term.index()) + " out of range for " + show(t));
      return comps[term.index() - 1];
    }
    case K::Lambda: {
      checker::well_formed_type(sig, ctx, term.type());
      const auto body = synth(sig, ctx.extended(term.binder(), term.type()), term.body());
      if (free_vars(body).count(term.binder())) return TypeExpr::pi(term.binder(), term.type(), body);
      return TypeExpr::arrow(term.type(), body);
    }
    case K::FormulaTerm:
      checker::well_formed_formula(sig, ctx, term.as_formula());
      return TypeExpr::prop();
    case K::Star:
      return TypeExpr::unit();
    case K::Ann:
      checker::well_formed_type(sig, ctx, term.type());
      check(sig, ctx, term.sub(0), term.type());
      return term.type();
    case K::Lit:
      checker::well_formed_type(sig, ctx, term.type());
      return term.type();
    case K::Inl:
    case K::Inr:
    case K::Absurd:
    case K::Sup:
      fail("cannot synthesize a type for " + show(term) + "; add an annotation");
  }
  fail("unhandled term " + show(term));
}

void check(const Signature& sig, const Context& ctx, const Term& term, const TypeExpr& expected) {
  using K = Term::Kind;
  using TK = TypeExpr::Kind;
  const auto e = normalize(expected);
  switch (term.kind()) {
    case K::Inl:
    case K::Inr:
      if (e.kind() != TK::Coproduct) fail("injection " + show(term) + " into non-coproduct type " + show(e));
      check(sig, ctx, term.sub(0), term.kind() == K::Inl ? e.left() : e.right());
      return;
    case K::Pair:
      if (e.kind() == TK::Product) {
        check(sig, ctx, term.sub(0), e.left());
        check(sig, ctx, term.sub(1), e.right());
        return;
      }
      if (e.kind() == TK::Sigma) {
        check(sig, ctx, term.sub(0), e.index());
        check(sig, ctx, term.sub(1), substitute(e.body(), {{e.binder(), term.sub(0)}}));
        return;
      }
      break;
    case K::Lambda:
      if (e.kind() == TK::Arrow || e.kind() == TK::Pi) {
        checker::well_formed_type(sig, ctx, term.type());
        const auto& dom = e.kind() == TK::Arrow ? e.left() : e.index();
        if (!types_equal(term.type(), dom))
          fail("lambda annotation " + show(term.type()) + " does not match domain " + show(dom));
        auto cod = e.kind() == TK::Arrow ? e.right()
                                         : substitute(e.body(), {{e.binder(), Term::var(term.binder())}});
        check(sig, ctx.extended(term.binder(), term.type()), term.body(), cod);
        return;
      }
      break;
    case K::Absurd:
      check(sig, ctx, term.sub(0), TypeExpr::zero());
      return;
    case K::Sup: {
      if (e.kind() != TK::W) fail("sup " + show(term) + " against non-W type " + show(e));
      const auto& label = term.sub(0);
      const auto& branches = term.sub(1);
      check(sig, ctx, label, e.index());
      const auto arity = normalize(substitute(e.body(), {{e.binder(), label}}));
      if (branches.kind() == K::Lambda && !types_equal(branches.type(), arity))
        fail("sup branch function domain " + show(branches.type()) + " is not the arity type " + show(arity) +
             " of label " + show(label));
      check(sig, ctx, branches, TypeExpr::arrow(arity, e));
      return;
    }
    case K::Star:
      if (e.kind() != TK::Unit) fail("type mismatch: expected " + show(e) + ", got 1 for *");
      return;
    default:
      break;
  }
  const auto got = synth(sig, ctx, term);
  if (!convertible(sig, ctx, got, e))
    fail("type mismatch: expected " + show(e) + ", got " + show(normalize(got)) + " for " + show(term));
}

void well_formed_formula(const Signature& sig, const Context& ctx, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Rel: {
      const auto* r = sig.find_rel(f.name());
      if (!r) fail("unknown relation '" + f.name() + "'");
      if (f.terms().size() != r->arity()) fail(arity_message("relation", f.name(), r->arity(), f.terms().size()));
      check_args(sig, ctx, f.terms(), r->arity_types);
      return;
    }
    case K::Eq:
      checker::well_formed_type(sig, ctx, f.type());
      try {
        check(sig, ctx, f.terms()[0], f.type());
        check(sig, ctx, f.terms()[1], f.type());
      } catch (const TypeError& err) {
        fail(std::string("type mismatch in equality: ") + err.what());
      }
      return;
    case K::Member: {
      const auto elem_type = carrier_type(sig, ctx, synth(sig, ctx, f.terms()[0]));
      try {
        check(sig, ctx, f.terms()[1], TypeExpr::arrow(elem_type, TypeExpr::prop()));
      } catch (const TypeError& err) {
        fail("non-predicate in membership " + to_string(f) + ": " + err.what());
      }
      return;
    }
    case K::Top:
    case K::Bottom:
      return;
    case K::And:
    case K::Or:
    case K::Implies:
      checker::well_formed_formula(sig, ctx, f.left());
      checker::well_formed_formula(sig, ctx, f.right());
      return;
    case K::Not:
      checker::well_formed_formula(sig, ctx, f.body());
      return;
    case K::Forall:
    case K::Exists:
      checker::well_formed_type(sig, ctx, f.type());
      checker::well_formed_formula(sig, ctx.extended(f.name(), f.type()), f.body());
      return;
  }
}

}  // namespace checker

namespace {

template <class F>
Verdict guarded(F&& body) {
  try {
    body();
    return Verdict::success();
  } catch (const TypeError& e) {
    return Verdict::failure(e.what());
  }
}

}  // namespace

Verdict validate_signature(const Signature& sig) {
  return guarded([&] {
    std::set<std::string> seen;
    for (const auto& b : sig.base_types)
      if (!seen.insert(b).second) fail("duplicate base type '" + b + "'");
    seen.clear();
    for (const auto& f : sig.fun_symbols) {
      if (!seen.insert(f.name).second) fail("duplicate function symbol '" + f.name + "'");
      for (const auto& d : f.domain) checker::well_formed_type(sig, {}, d);
      if (!f.is_family()) checker::well_formed_type(sig, {}, f.codomain);
    }
    seen.clear();
    for (const auto& r : sig.rel_symbols) {
      if (!seen.insert(r.name).second) fail("duplicate relation symbol '" + r.name + "'");
      for (const auto& d : r.arity_types) checker::well_formed_type(sig, {}, d);
    }
  });
}

Verdict well_formed_context(const Signature& sig, const Context& ctx) {
  return guarded([&] {
    Context prefix;
    for (const auto& e : ctx.entries) {
      if (prefix.binds(e.var)) fail("duplicate context variable '" + e.var + "'");
      checker::well_formed_type(sig, prefix, e.type);
      prefix.entries.push_back(e);
    }
  });
}

Verdict well_formed_type(const Signature& sig, const Context& ctx, const TypeExpr& t) {
  return guarded([&] { checker::well_formed_type(sig, ctx, t); });
}

Verdict check_term(const Signature& sig, const Context& ctx, const Term& term, const TypeExpr& expected) {
  return guarded([&] {
    checker::well_formed_type(sig, ctx, expected);
    checker::check(sig, ctx, term, expected);
  });
}

Synthesis synthesize(const Signature& sig, const Context& ctx, const Term& term) {
  try {
    return {checker::synth(sig, ctx, term), {}};
  } catch (const TypeError& e) {
    return {std::nullopt, e.what()};
  }
}

bool contexts_equal(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.entries[i].var != b.entries[i].var) return false;
    if (!types_equal(a.entries[i].type, b.entries[i].type)) return false;
  }
  return true;
}

ContextMorphism identity_morphism(const Context& ctx) {
  ContextMorphism m{ctx, ctx, {}};
  for (const auto& e : ctx.entries) m.components.push_back(Term::var(e.var));
  return m;
}

Verdict check_morphism(const Signature& sig, const ContextMorphism& m) {
  if (auto v = well_formed_context(sig, m.source); !v) return v;
  if (auto v = well_formed_context(sig, m.target); !v) return v;
  if (m.components.size() != m.target.size())
    return Verdict::failure("expected " + std::to_string(m.target.size()) + " components, got " +
                            std::to_string(m.components.size()));
  return guarded([&] {
    Substitution earlier;
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      const auto want = substitute(m.target.entries[i].type, earlier);
      checker::check(sig, m.source, m.components[i], want);
      earlier.emplace_back(m.target.entries[i].var, m.components[i]);
    }
  });
}

ContextMorphism compose_context_morphisms(const ContextMorphism& f, const ContextMorphism& g) {
  if (!contexts_equal(f.target, g.source))
    throw ContextMismatch("context mismatch: cannot compose " + to_string(f.target) + " with " + to_string(g.source));
  Substitution s;
  for (std::size_t j = 0; j < g.source.size(); ++j) s.emplace_back(g.source.entries[j].var, f.components[j]);
  ContextMorphism out{f.source, g.target, {}};
  for (const auto& c : g.components) out.components.push_back(substitute(c, s));
  return out;
}

bool morphisms_alpha_equal(const ContextMorphism& a, const ContextMorphism& b) {
  if (!contexts_equal(a.source, b.source) || !contexts_equal(a.target, b.target)) return false;
  if (a.components.size() != b.components.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    if (!alpha_equal(a.components[i], b.components[i])) return false;
  return true;
}

}  // namespace mulingua
