#include "mulingua/semantics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mulingua/logic.hpp"

namespace mulingua {

namespace {

using K = TypeExpr::Kind;

std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t budget, const TypeExpr& t) {
  if (a != 0 && b > budget / a)
    throw BudgetExceeded("carrier of " + to_string(t) + " exceeds the element budget of " + std::to_string(budget));
  return a * b;
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t budget, const TypeExpr& t) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r = checked_mul(r, base, budget, t);
    if (r == 0) return 0;
  }
  return r;
}

void guard(std::size_t n, std::size_t budget, const TypeExpr& t) {
  if (n > budget)
    throw BudgetExceeded("carrier of " + to_string(t) + " exceeds the element budget of " + std::to_string(budget));
}

/// Odometer over mixed radices, last position fastest.
template <class F>
void odometer(const std::vector<std::size_t>& radices, F&& visit) {
  for (auto r : radices)
    if (r == 0) return;
  std::vector<std::size_t> digits(radices.size(), 0);
  while (true) {
    visit(digits);
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < radices[i]) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (digits.empty()) return;
  }
}

class Evaluator {
 public:
  Evaluator(const Structure& st, const EvalOptions& opts, Environment env)
      : st_(st), opts_(opts), env_(std::move(env)) {}

  FinSet type(const TypeExpr& t);
  Value term(const Term& t);
  bool formula(const Formula& f);
  bool belongs(const TypeExpr& t, const Value& v);
  std::size_t count(const TypeExpr& t);

 private:
  struct Bind {
    Bind(Evaluator& e, const std::string& x, const Value& v) : e_(e) { e_.env_.emplace_back(x, v); }
    ~Bind() { e_.env_.pop_back(); }
    Evaluator& e_;
  };

  const Value* lookup(const std::string& x) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  Value call_symbol(const std::string& name, const std::vector<Value>& args);
  FinSet functions(const TypeExpr& whole, const FinSet& dom, const std::vector<FinSet>& fibers, bool section);
  FinSet w_type(const TypeExpr& t);

  const Structure& st_;
  const EvalOptions& opts_;
  Environment env_;
};

FinSet Evaluator::functions(const TypeExpr& whole, const FinSet& dom, const std::vector<FinSet>& fibers,
                            bool section) {
  std::size_t total = 1;
  std::vector<std::size_t> radices;
  for (const auto& f : fibers) {
    total = checked_mul(total, f.size(), opts_.element_budget, whole);
    radices.push_back(f.size());
  }
  std::vector<Value> out;
  out.reserve(total);
  odometer(radices, [&](const std::vector<std::size_t>& digits) {
    std::vector<Value::Entry> entries;
    entries.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) entries.emplace_back(dom[i], fibers[i][digits[i]]);
    out.push_back(section ? Value::section(std::move(entries)) : Value::table(std::move(entries)));
  });
  return FinSet(std::move(out));
}

FinSet Evaluator::w_type(const TypeExpr& t) {
  const auto labels = type(t.index());
  std::vector<FinSet> arities;
  for (const auto& a : labels) {
    Bind b(*this, t.binder(), a);
    arities.push_back(type(t.body()));
  }
  FinSet stage;
  for (std::size_t depth = 1; depth <= opts_.w_depth_bound + 1; ++depth) {
    std::vector<Value> next;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& arity = arities[i];
      std::vector<std::size_t> radices(arity.size(), stage.size());
      odometer(radices, [&](const std::vector<std::size_t>& digits) {
        std::vector<Value::Entry> branches;
        for (std::size_t k = 0; k < arity.size(); ++k) branches.emplace_back(arity[k], stage[digits[k]]);
        next.push_back(Value::tree(labels[i], std::move(branches)));
        guard(next.size(), opts_.element_budget, t);
      });
    }
    if (next.size() == stage.size()) return stage;
    stage = FinSet(std::move(next));
  }
  throw SemanticError("W-type " + to_string(t) + " is infinite at depth bound " + std::to_string(opts_.w_depth_bound));
}

FinSet Evaluator::type(const TypeExpr& t) {
  switch (t.kind()) {
    case K::Base: {
      auto it = st_.carriers.find(t.name());
      if (it == st_.carriers.end()) throw SemanticError("no carrier for base type '" + t.name() + "'");
      return it->second;
    }
    case K::Zero:
      return {};
    case K::Unit:
      return FinSet({Value::star()});
    case K::Prop:
      return FinSet({Value::truth(false), Value::truth(true)});
    case K::Universe:
      throw SemanticError("the universe Type has no finite carrier");
    case K::Product: {
      const auto a = type(t.left());
      const auto b = type(t.right());
      guard(checked_mul(a.size(), b.size(), opts_.element_budget, t), opts_.element_budget, t);
      std::vector<Value> out;
      for (const auto& x : a)
        for (const auto& y : b) out.push_back(Value::pair(x, y));
      return FinSet(std::move(out));
    }
    case K::Coproduct: {
      const auto a = type(t.left());
      const auto b = type(t.right());
      guard(a.size() + b.size(), opts_.element_budget, t);
      std::vector<Value> out;
      for (const auto& x : a) out.push_back(Value::inl(x));
      for (const auto& y : b) out.push_back(Value::inr(y));
      return FinSet(std::move(out));
    }
    case K::Arrow:
    case K::Power: {
      const auto dom = type(t.kind() == K::Arrow ? t.left() : t.inner());
      const auto cod = t.kind() == K::Arrow ? type(t.right()) : type(TypeExpr::prop());
      checked_pow(cod.size(), dom.size(), opts_.element_budget, t);
      return functions(t, dom, std::vector<FinSet>(dom.size(), cod), false);
    }
    case K::Pi: {
      const auto dom = type(t.index());
      std::vector<FinSet> fibers;
      for (const auto& a : dom) {
        Bind b(*this, t.binder(), a);
        fibers.push_back(type(t.body()));
      }
      return functions(t, dom, fibers, true);
    }
    case K::Sigma: {
      const auto dom = type(t.index());
      std::vector<Value> out;
      for (const auto& a : dom) {
        Bind b(*this, t.binder(), a);
        for (const auto& y : type(t.body())) {
          out.push_back(Value::pair(a, y));
          guard(out.size(), opts_.element_budget, t);
        }
      }
      return FinSet(std::move(out));
    }
    case K::W:
      return w_type(t);
    case K::Fin: {
      const auto v = term(t.term());
      if (v.kind() != Value::Kind::Atom) throw SemanticError("fin bound is not a carrier element: " + to_string(v));
      guard(v.index(), opts_.element_budget, t);
      return make_numbered_carrier("Fin", v.index());
    }
    case K::Subtype: {
      const auto p = term(t.term());
      if (!p.is_function()) throw SemanticError("subtype of non-predicate value " + to_string(p));
      std::vector<Value> out;
      for (const auto& [x, holds] : p.entries())
        if (holds.kind() == Value::Kind::Truth && holds.truth()) out.push_back(x);
      return FinSet(std::move(out));
    }
    case K::PropType:
      if (formula(t.formula())) return FinSet({Value::star()});
      return {};
    case K::Family: {
      std::vector<Value> args;
      for (const auto& a : t.args()) args.push_back(term(a));
      auto ft = st_.family_tables.find(t.name());
      if (ft == st_.family_tables.end()) throw SemanticError("no table for type family '" + t.name() + "'");
      auto it = ft->second.find(args);
      if (it == ft->second.end()) throw SemanticError("type family '" + t.name() + "' undefined at these arguments");
      return it->second;
    }
    case K::Case: {
      const auto v = term(t.term());
      if (v.kind() == Value::Kind::Inl) return type(t.left());
      if (v.kind() == Value::Kind::Inr) return type(t.right());
      throw SemanticError("case on non-injection value " + to_string(v));
    }
  }
  throw SemanticError("unhandled type " + to_string(t));
}

std::size_t Evaluator::count(const TypeExpr& t) {
  const auto budget = opts_.element_budget;
  std::size_t n = 0;
  switch (t.kind()) {
    case K::Zero: return 0;
    case K::Unit: return 1;
    case K::Prop: return 2;
    case K::Product: n = checked_mul(count(t.left()), count(t.right()), budget, t); break;
    case K::Coproduct: n = count(t.left()) + count(t.right()); break;
    case K::Arrow: n = checked_pow(count(t.right()), count(t.left()), budget, t); break;
    case K::Power: n = checked_pow(2, count(t.inner()), budget, t); break;
    case K::Pi: {
      n = 1;
      for (const auto& a : type(t.index())) {
        Bind b(*this, t.binder(), a);
        n = checked_mul(n, count(t.body()), budget, t);
      }
      break;
    }
    case K::Sigma: {
      for (const auto& a : type(t.index())) {
        Bind b(*this, t.binder(), a);
        n += count(t.body());
      }
      break;
    }
    default: return type(t).size();
  }
  guard(n, budget, t);
  return n;
}

bool Evaluator::belongs(const TypeExpr& t, const Value& v) {
  using VK = Value::Kind;
  switch (t.kind()) {
    case K::Base: {
      auto it = st_.carriers.find(t.name());
      return it != st_.carriers.end() && it->second.contains(v);
    }
    case K::Zero: return false;
    case K::Unit: return v.kind() == VK::Star;
    case K::Prop: return v.kind() == VK::Truth;
    case K::Product: return v.kind() == VK::Pair && belongs(t.left(), v.first()) && belongs(t.right(), v.second());
    case K::Coproduct:
      if (v.kind() == VK::Inl) return belongs(t.left(), v.inner());
      if (v.kind() == VK::Inr) return belongs(t.right(), v.inner());
      return false;
    case K::Arrow:
    case K::Power:
    case K::Pi: {
      if (!v.is_function()) return false;
      const auto dom = type(t.kind() == K::Power ? t.inner() : t.left());
      const auto& entries = v.entries();
      if (entries.size() != dom.size()) return false;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (entries[i].first != dom[i]) return false;
        if (t.kind() == K::Pi) {
          Bind b(*this, t.binder(), dom[i]);
          if (!belongs(t.body(), entries[i].second)) return false;
        } else if (!belongs(t.kind() == K::Power ? TypeExpr::prop() : t.right(), entries[i].second)) {
          return false;
        }
      }
      return true;
    }
    case K::Sigma: {
      if (v.kind() != VK::Pair || !belongs(t.index(), v.first())) return false;
      Bind b(*this, t.binder(), v.first());
      return belongs(t.body(), v.second());
    }
    case K::W: {
      if (v.kind() != VK::Tree || !belongs(t.index(), v.label())) return false;
      FinSet arity;
      {
        Bind b(*this, t.binder(), v.label());
        arity = type(t.body());
      }
      const auto& br = v.entries();
      if (br.size() != arity.size()) return false;
      for (std::size_t i = 0; i < br.size(); ++i)
        if (br[i].first != arity[i] || !belongs(t, br[i].second)) return false;
      return true;
    }
    default:
      return type(t).contains(v);
  }
}

Value Evaluator::call_symbol(const std::string& name, const std::vector<Value>& args) {
  if (auto ft = st_.fun_tables.find(name); ft != st_.fun_tables.end()) {
    auto it = ft->second.find(args);
    if (it == ft->second.end()) {
      std::ostringstream os;
      os << "function '" << name << "' undefined at (";
      for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
      os << ')';
      throw SemanticError(os.str());
    }
    return it->second;
  }
  if (auto rt = st_.rel_tables.find(name); rt != st_.rel_tables.end()) return Value::truth(rt->second.count(args) != 0);
  if (st_.signature.find_rel(name)) return Value::truth(false);
  throw SemanticError("no interpretation for symbol '" + name + "'");
}

Value Evaluator::term(const Term& t) {
  using TK = Term::Kind;
  switch (t.kind()) {
    case TK::Var:
      if (const auto* v = lookup(t.name())) return *v;
      return call_symbol(t.name(), {});
    case TK::App: {
      const auto& head = t.head();
      std::vector<Value> args;
      for (const auto& a : t.args()) args.push_back(term(a));
      if (head.kind() == TK::Var && !lookup(head.name())) return call_symbol(head.name(), args);
      Value f = term(head);
      for (const auto& a : args) {
        auto r = f.apply(a);
        if (!r) throw SemanticError("cannot apply " + to_string(f) + " to " + to_string(a));
        f = *r;
      }
      return f;
    }
    case TK::Pair:
      return Value::pair(term(t.sub(0)), term(t.sub(1)));
    case TK::Proj1:
    case TK::Proj2: {
      const auto p = term(t.sub(0));
      if (p.kind() != Value::Kind::Pair) throw SemanticError("projection of non-pair " + to_string(p));
      return t.kind() == TK::Proj1 ? p.first() : p.second();
    }
    case TK::TupleProj: {
      Value v = term(t.sub(0));
      for (std::size_t i = 1; i < t.index(); ++i) {
        if (v.kind() != Value::Kind::Pair) throw SemanticError("tuple index out of range");
        v = v.second();
      }
      return v.kind() == Value::Kind::Pair ? v.first() : v;
    }
    case TK::Inl:
      return Value::inl(term(t.sub(0)));
    case TK::Inr:
      return Value::inr(term(t.sub(0)));
    case TK::Lambda: {
      const auto dom = type(t.type());
      std::vector<Value::Entry> entries;
      for (const auto& a : dom) {
        Bind b(*this, t.binder(), a);
        entries.emplace_back(a, term(t.body()));
      }
      return Value::table(std::move(entries));
    }
    case TK::Sup: {
      const auto label = term(t.sub(0));
      const auto f = term(t.sub(1));
      if (!f.is_function()) throw SemanticError("sup branches are not a function: " + to_string(f));
      return Value::tree(label, f.entries());
    }
    case TK::FormulaTerm:
      return Value::truth(formula(t.as_formula()));
    case TK::Star:
      return Value::star();
    case TK::Absurd:
      throw SemanticError("absurd eliminated an element of the empty type");
    case TK::Ann:
      return term(t.sub(0));
    case TK::Lit:
      return t.value();
  }
  throw SemanticError("unhandled term " + to_string(t));
}

bool Evaluator::formula(const Formula& f) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::Rel: {
      std::vector<Value> args;
      for (const auto& a : f.terms()) args.push_back(term(a));
      auto rt = st_.rel_tables.find(f.name());
      if (rt == st_.rel_tables.end()) {
        if (st_.signature.find_rel(f.name())) return false;
        throw SemanticError("no interpretation for relation '" + f.name() + "'");
      }
      return rt->second.count(args) != 0;
    }
    case FK::Eq:
      return term(f.terms()[0]) == term(f.terms()[1]);
    case FK::Member: {
      const auto x = term(f.terms()[0]);
      const auto p = term(f.terms()[1]);
      auto r = p.apply(x);
      if (!r || r->kind() != Value::Kind::Truth)
        throw SemanticError("membership of " + to_string(x) + " in non-predicate " + to_string(p));
      return r->truth();
    }
    case FK::Top: return true;
    case FK::Bottom: return false;
    case FK::And: return formula(f.left()) && formula(f.right());
    case FK::Or: return formula(f.left()) || formula(f.right());
    case FK::Implies: return !formula(f.left()) || formula(f.right());
    case FK::Not: return !formula(f.body());
    case FK::Forall:
    case FK::Exists: {
      const bool universal = f.kind() == FK::Forall;
      for (const auto& a : type(f.type())) {
        Bind b(*this, f.name(), a);
        if (formula(f.body()) != universal) return !universal;
      }
      return universal;
    }
  }
  throw SemanticError("unhandled formula " + to_string(f));
}

}  // namespace

std::string to_string(const Environment& env) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < env.size(); ++i) os << (i ? " (" : "(") << env[i].first << ' ' << env[i].second << ')';
  os << ')';
  return os.str();
}

std::optional<Value> Structure::element(const std::string& type, const std::string& name) const {
  auto it = carriers.find(type);
  if (it == carriers.end()) return std::nullopt;
  for (const auto& v : it->second)
    if (v.kind() == Value::Kind::Atom && v.name() == name) return v;
  return std::nullopt;
}

FinSet interpret_type(const Structure& st, const Environment& env, const TypeExpr& t, const EvalOptions& opts) {
  return Evaluator(st, opts, env).type(t);
}

Value eval_term(const Structure& st, const Environment& env, const Term& term, const EvalOptions& opts) {
  return Evaluator(st, opts, env).term(term);
}

bool eval_formula(const Structure& st, const Environment& env, const Formula& f, const EvalOptions& opts) {
  return Evaluator(st, opts, env).formula(f);
}

bool belongs(const Structure& st, const Environment& env, const TypeExpr& t, const Value& v, const EvalOptions& opts) {
  return Evaluator(st, opts, env).belongs(t, v);
}

std::size_t cardinality(const Structure& st, const Environment& env, const TypeExpr& t, const EvalOptions& opts) {
  return Evaluator(st, opts, env).count(t);
}

void for_each_environment(const Structure& st, const Context& ctx, const Environment& base,
                          const std::function<bool(const Environment&)>& visit, const EvalOptions& opts) {
  Environment env = base;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == ctx.size()) return visit(env);
    const auto& e = ctx.entries[i];
    for (const auto& v : interpret_type(st, env, e.type, opts)) {
      env.emplace_back(e.var, v);
      const bool keep_going = go(i + 1);
      env.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  go(0);
}

std::optional<Environment> find_counterexample(const Structure& st, const Context& ctx, const Formula& f,
                                               const EvalOptions& opts) {
  auto [prefix, body] = split_universal_prefix(f);
  Context full = ctx;
  full.entries.insert(full.entries.end(), prefix.entries.begin(), prefix.entries.end());
  std::optional<Environment> found;
  for_each_environment(
      st, full, {},
      [&](const Environment& env) {
        if (eval_formula(st, env, body, opts)) return true;
        found = env;
        return false;
      },
      opts);
  return found;
}

Verdict validate_theory(const Theory& th) {
  if (auto v = validate_signature(th.signature); !v) return v;
  for (const auto& ax : th.axioms) {
    if (auto v = well_formed_context(th.signature, ax.context); !v)
      return Verdict::failure("axiom " + ax.name + ": " + v.message);
    if (auto v = well_formed_formula(th.signature, ax.context, ax.formula); !v)
      return Verdict::failure("axiom " + ax.name + ": " + v.message);
  }
  return Verdict::success();
}

bool TheoryReport::all_pass() const { return passed() == results.size(); }

std::size_t TheoryReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const AxiomResult& r) { return r.holds; }));
}

std::string TheoryReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "axiom " << r.name << ": ";
    if (r.holds)
      os << "pass\n";
    else
      os << "FAIL counterexample " << (r.counterexample ? to_string(*r.counterexample) : "()") << '\n';
  }
  os << results.size() << " axioms, " << passed() << " pass\n";
  return os.str();
}

TheoryReport check_theory(const Structure& st, const Theory& th, const EvalOptions& opts) {
  TheoryReport report;
  for (const auto& ax : th.axioms) {
    AxiomResult r{ax.name, true, std::nullopt};
    if (auto cex = find_counterexample(st, ax.context, ax.formula, opts)) {
      r.holds = false;
      r.counterexample = std::move(cex);
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

Verdict validate_structure(const Structure& st, const EvalOptions& opts) {
  const auto& sig = st.signature;
  if (auto v = validate_signature(sig); !v) return v;
  for (const auto& b : sig.base_types)
    if (!st.carriers.count(b)) return Verdict::failure("no carrier for base type '" + b + "'");
  try {
    for (const auto& f : sig.fun_symbols) {
      Context args;
      for (std::size_t i = 0; i < f.domain.size(); ++i) args.entries.push_back({"#" + std::to_string(i), f.domain[i]});
      std::size_t expected = 0;
      Verdict bad = Verdict::success();
      auto tuple_of = [](const Environment& env) {
        std::vector<Value> out;
        for (const auto& [_, v] : env) out.push_back(v);
        return out;
      };
      if (f.is_family()) {
        auto table = st.family_tables.find(f.name);
        if (table == st.family_tables.end()) return Verdict::failure("no table for type family '" + f.name + "'");
        for_each_environment(
            st, args, {},
            [&](const Environment& env) {
              ++expected;
              if (!table->second.count(tuple_of(env))) {
                bad = Verdict::failure("type family '" + f.name + "' is not total: missing " + to_string(env));
                return false;
              }
              return true;
            },
            opts);
        if (!bad) return bad;
        if (table->second.size() != expected)
          return Verdict::failure("type family '" + f.name + "' has entries outside its domain");
        continue;
      }
      auto table = st.fun_tables.find(f.name);
      if (table == st.fun_tables.end()) return Verdict::failure("no table for function symbol '" + f.name + "'");
      for_each_environment(
          st, args, {},
          [&](const Environment& env) {
            ++expected;
            auto it = table->second.find(tuple_of(env));
            if (it == table->second.end()) {
              bad = Verdict::failure("function '" + f.name + "' is not total: missing " + to_string(env));
              return false;
            }
            if (!belongs(st, {}, f.codomain, it->second, opts)) {
              bad = Verdict::failure("function '" + f.name + "' leaves its codomain at " + to_string(env) + ": " +
                                     to_string(it->second));
              return false;
            }
            return true;
          },
          opts);
      if (!bad) return bad;
      if (table->second.size() != expected)
        return Verdict::failure("function '" + f.name + "' has entries outside its domain");
    }
    for (const auto& r : sig.rel_symbols) {
      auto table = st.rel_tables.find(r.name);
      if (table == st.rel_tables.end()) continue;  // absent table = empty relation
      for (const auto& tuple : table->second) {
        if (tuple.size() != r.arity())
          return Verdict::failure("relation '" + r.name + "' has a tuple of the wrong length");
        for (std::size_t i = 0; i < tuple.size(); ++i)
          if (!belongs(st, {}, r.arity_types[i], tuple[i], opts))
            return Verdict::failure("relation '" + r.name + "' has a tuple outside its arity: " + to_string(tuple[i]));
      }
    }
  } catch (const BudgetExceeded& e) {
    return Verdict::failure(e.what());
  } catch (const SemanticError& e) {
    return Verdict::failure(e.what());
  }
  return Verdict::success();
}

std::optional<Value> map_along(const StructureHom& h, const TypeExpr& t, const Value& v) {
  switch (t.kind()) {
    case K::Base: {
      auto c = h.components.find(t.name());
      if (c == h.components.end()) return std::nullopt;
      auto it = c->second.find(v);
      if (it == c->second.end()) return std::nullopt;
      return it->second;
    }
    case K::Unit:
    case K::Prop:
      return v;
    case K::Product: {
      if (v.kind() != Value::Kind::Pair) return std::nullopt;
      auto a = map_along(h, t.left(), v.first());
      auto b = map_along(h, t.right(), v.second());
      if (!a || !b) return std::nullopt;
      return Value::pair(*a, *b);
    }
    case K::Coproduct: {
      if (v.kind() == Value::Kind::Inl) {
        auto a = map_along(h, t.left(), v.inner());
        return a ? std::optional(Value::inl(*a)) : std::nullopt;
      }
      if (v.kind() == Value::Kind::Inr) {
        auto b = map_along(h, t.right(), v.inner());
        return b ? std::optional(Value::inr(*b)) : std::nullopt;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

Verdict check_structure_hom(const StructureHom& h, const EvalOptions& opts) {
  if (!h.source || !h.target) return Verdict::failure("homomorphism without source or target");
  const auto& src = *h.source;
  const auto& tgt = *h.target;
  for (const auto& b : src.signature.base_types) {
    auto c = h.components.find(b);
    if (c == h.components.end()) return Verdict::failure("no component map for base type '" + b + "'");
    const auto& from = src.carriers.at(b);
    const auto& to = tgt.carriers.at(b);
    for (const auto& x : from) {
      auto it = c->second.find(x);
      if (it == c->second.end())
        return Verdict::failure("component for '" + b + "' is not total: missing " + to_string(x));
      if (!to.contains(it->second))
        return Verdict::failure("component for '" + b + "' sends " + to_string(x) + " outside the target carrier");
    }
  }
  auto render_args = [](const std::vector<Value>& args) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
    os << ')';
    return os.str();
  };
  for (const auto& f : src.signature.fun_symbols) {
    if (f.is_family()) continue;
    const auto& src_table = src.fun_tables.at(f.name);
    const auto& tgt_table = tgt.fun_tables.at(f.name);
    for (const auto& [args, result] : src_table) {
      std::vector<Value> mapped;
      for (std::size_t i = 0; i < args.size(); ++i) {
        auto m = map_along(h, f.domain[i], args[i]);
        if (!m) return Verdict::failure("cannot transport arguments of '" + f.name + "' of type " + to_string(f.domain[i]));
        mapped.push_back(*m);
      }
      auto lhs = map_along(h, f.codomain, result);
      if (!lhs) return Verdict::failure("cannot transport results of '" + f.name + "' of type " + to_string(f.codomain));
      auto rhs = tgt_table.find(mapped);
      if (rhs == tgt_table.end() || rhs->second != *lhs) {
        std::ostringstream os;
        os << "square for '" << f.name << "' fails at " << render_args(args) << ": h(" << f.name << render_args(args)
           << ") = " << *lhs << " but " << f.name << render_args(mapped) << " = "
           << (rhs == tgt_table.end() ? std::string("undefined") : to_string(rhs->second));
        return Verdict::failure(os.str());
      }
    }
  }
  for (const auto& r : src.signature.rel_symbols) {
    auto st = src.rel_tables.find(r.name);
    if (st == src.rel_tables.end()) continue;
    auto tt = tgt.rel_tables.find(r.name);
    for (const auto& tuple : st->second) {
      std::vector<Value> mapped;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        auto m = map_along(h, r.arity_types[i], tuple[i]);
        if (!m) return Verdict::failure("cannot transport tuples of '" + r.name + "'");
        mapped.push_back(*m);
      }
      if (tt == tgt.rel_tables.end() || !tt->second.count(mapped))
        return Verdict::failure("relation '" + r.name + "' not preserved at " + render_args(tuple));
    }
  }
  (void)opts;
  return Verdict::success();
}

}  // namespace mulingua
