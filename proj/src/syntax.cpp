#include "mulingua/syntax.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace mulingua {

using detail::FormulaNode;
using detail::TermNode;
using detail::TypeNode;

// ---------------------------------------------------------------- TypeExpr

TypeExpr TypeExpr::from_node(TypeNode n) { return TypeExpr(std::make_shared<const TypeNode>(std::move(n))); }

namespace {

TypeExpr make_type(TypeExpr::Kind k, std::string name = {}, std::vector<TypeExpr> types = {},
                   std::vector<Term> terms = {}, std::vector<Formula> formulas = {}) {
  TypeNode n;
  n.kind = k;
  n.name = std::move(name);
  n.types = std::move(types);
  n.terms = std::move(terms);
  n.formulas = std::move(formulas);
  return TypeExpr::from_node(std::move(n));
}

Term make_term(Term::Kind k, std::string name = {}, std::vector<Term> terms = {},
               std::vector<TypeExpr> types = {}, std::vector<Formula> formulas = {}) {
  TermNode n;
  n.kind = k;
  n.name = std::move(name);
  n.terms = std::move(terms);
  n.types = std::move(types);
  n.formulas = std::move(formulas);
  return Term::from_node(std::move(n));
}

Formula make_formula(Formula::Kind k, std::string name = {}, std::vector<Formula> formulas = {},
                     std::vector<TypeExpr> types = {}, std::vector<Term> terms = {}) {
  FormulaNode n;
  n.kind = k;
  n.name = std::move(name);
  n.formulas = std::move(formulas);
  n.types = std::move(types);
  n.terms = std::move(terms);
  return Formula::from_node(std::move(n));
}

template <class T>
const T& at(const std::vector<T>& v, std::size_t i, const char* what) {
  if (i >= v.size()) throw std::logic_error(what);
  return v[i];
}

}  // namespace

TypeExpr TypeExpr::base(std::string name) { return make_type(Kind::Base, std::move(name)); }
TypeExpr TypeExpr::zero() { return make_type(Kind::Zero); }
TypeExpr TypeExpr::unit() { return make_type(Kind::Unit); }
TypeExpr TypeExpr::prop() { return make_type(Kind::Prop); }
TypeExpr TypeExpr::universe() { return make_type(Kind::Universe); }
TypeExpr TypeExpr::product(TypeExpr l, TypeExpr r) { return make_type(Kind::Product, {}, {std::move(l), std::move(r)}); }
TypeExpr TypeExpr::coproduct(TypeExpr l, TypeExpr r) {
  return make_type(Kind::Coproduct, {}, {std::move(l), std::move(r)});
}
TypeExpr TypeExpr::arrow(TypeExpr d, TypeExpr c) { return make_type(Kind::Arrow, {}, {std::move(d), std::move(c)}); }
TypeExpr TypeExpr::pi(std::string x, TypeExpr a, TypeExpr b) {
  return make_type(Kind::Pi, std::move(x), {std::move(a), std::move(b)});
}
TypeExpr TypeExpr::sigma(std::string x, TypeExpr a, TypeExpr b) {
  return make_type(Kind::Sigma, std::move(x), {std::move(a), std::move(b)});
}
TypeExpr TypeExpr::w(std::string x, TypeExpr a, TypeExpr b) {
  return make_type(Kind::W, std::move(x), {std::move(a), std::move(b)});
}
TypeExpr TypeExpr::power(TypeExpr inner) { return make_type(Kind::Power, {}, {std::move(inner)}); }
TypeExpr TypeExpr::fin(Term bound) { return make_type(Kind::Fin, {}, {}, {std::move(bound)}); }
TypeExpr TypeExpr::subtype(Term pred) { return make_type(Kind::Subtype, {}, {}, {std::move(pred)}); }
TypeExpr TypeExpr::proposition(Formula f) { return make_type(Kind::PropType, {}, {}, {}, {std::move(f)}); }
TypeExpr TypeExpr::family(std::string symbol, std::vector<Term> args) {
  return make_type(Kind::Family, std::move(symbol), {}, std::move(args));
}
TypeExpr TypeExpr::case_of(Term t, TypeExpr l, TypeExpr r) {
  return make_type(Kind::Case, {}, {std::move(l), std::move(r)}, {std::move(t)});
}

TypeExpr::Kind TypeExpr::kind() const { return node_->kind; }
const std::string& TypeExpr::name() const { return node_->name; }
const TypeExpr& TypeExpr::left() const { return at(node_->types, 0, "TypeExpr::left"); }
const TypeExpr& TypeExpr::right() const { return at(node_->types, 1, "TypeExpr::right"); }
const TypeExpr& TypeExpr::inner() const { return at(node_->types, 0, "TypeExpr::inner"); }
const Term& TypeExpr::term() const { return at(node_->terms, 0, "TypeExpr::term"); }
const std::vector<Term>& TypeExpr::args() const { return node_->terms; }
const Formula& TypeExpr::formula() const { return at(node_->formulas, 0, "TypeExpr::formula"); }

// -------------------------------------------------------------------- Term

Term Term::from_node(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }

Term Term::var(std::string name) { return make_term(Kind::Var, std::move(name)); }
Term Term::app(Term head, std::vector<Term> args) {
  args.insert(args.begin(), std::move(head));
  return make_term(Kind::App, {}, std::move(args));
}
Term Term::call(std::string symbol, std::vector<Term> args) { return app(var(std::move(symbol)), std::move(args)); }
Term Term::pair(Term a, Term b) { return make_term(Kind::Pair, {}, {std::move(a), std::move(b)}); }
Term Term::proj1(Term t) { return make_term(Kind::Proj1, {}, {std::move(t)}); }
Term Term::proj2(Term t) { return make_term(Kind::Proj2, {}, {std::move(t)}); }
Term Term::inl(Term t) { return make_term(Kind::Inl, {}, {std::move(t)}); }
Term Term::inr(Term t) { return make_term(Kind::Inr, {}, {std::move(t)}); }
Term Term::lambda(std::string x, TypeExpr annot, Term body) {
  return make_term(Kind::Lambda, std::move(x), {std::move(body)}, {std::move(annot)});
}
Term Term::tuple_proj(Term t, std::size_t index) {
  TermNode n;
  n.kind = Kind::TupleProj;
  n.index = index;
  n.terms = {std::move(t)};
  return from_node(std::move(n));
}
Term Term::sup(Term label, Term branches) { return make_term(Kind::Sup, {}, {std::move(label), std::move(branches)}); }
Term Term::formula(Formula f) { return make_term(Kind::FormulaTerm, {}, {}, {}, {std::move(f)}); }
Term Term::star() { return make_term(Kind::Star); }
Term Term::absurd(Term t) { return make_term(Kind::Absurd, {}, {std::move(t)}); }
Term Term::ann(Term t, TypeExpr type) { return make_term(Kind::Ann, {}, {std::move(t)}, {std::move(type)}); }
Term Term::lit(TypeExpr type, Value v) {
  TermNode n;
  n.kind = Kind::Lit;
  n.types = {std::move(type)};
  n.value = std::move(v);
  return from_node(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::head() const { return at(node_->terms, 0, "Term::head"); }
std::vector<Term> Term::args() const {
  if (node_->kind != Kind::App) return {};
  return {node_->terms.begin() + 1, node_->terms.end()};
}
const Term& Term::sub(std::size_t i) const { return at(node_->terms, i, "Term::sub"); }
const TypeExpr& Term::type() const { return at(node_->types, 0, "Term::type"); }
std::size_t Term::index() const { return node_->index; }
const Formula& Term::as_formula() const { return at(node_->formulas, 0, "Term::as_formula"); }
const Value& Term::value() const {
  if (!node_->value) throw std::logic_error("Term::value on non-literal");
  return *node_->value;
}

// ----------------------------------------------------------------- Formula

Formula Formula::from_node(FormulaNode n) { return Formula(std::make_shared<const FormulaNode>(std::move(n))); }

Formula Formula::rel(std::string name, std::vector<Term> args) {
  return make_formula(Kind::Rel, std::move(name), {}, {}, std::move(args));
}
Formula Formula::eq(TypeExpr type, Term lhs, Term rhs) {
  return make_formula(Kind::Eq, {}, {}, {std::move(type)}, {std::move(lhs), std::move(rhs)});
}
Formula Formula::member(Term elem, Term pred) {
  return make_formula(Kind::Member, {}, {}, {}, {std::move(elem), std::move(pred)});
}
Formula Formula::top() { return make_formula(Kind::Top); }
Formula Formula::bottom() { return make_formula(Kind::Bottom); }
Formula Formula::conj(Formula l, Formula r) { return make_formula(Kind::And, {}, {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make_formula(Kind::Or, {}, {std::move(l), std::move(r)}); }
Formula Formula::implies(Formula l, Formula r) { return make_formula(Kind::Implies, {}, {std::move(l), std::move(r)}); }
Formula Formula::negation(Formula f) { return make_formula(Kind::Not, {}, {std::move(f)}); }
Formula Formula::forall(std::string x, TypeExpr t, Formula body) {
  return make_formula(Kind::Forall, std::move(x), {std::move(body)}, {std::move(t)});
}
Formula Formula::exists(std::string x, TypeExpr t, Formula body) {
  return make_formula(Kind::Exists, std::move(x), {std::move(body)}, {std::move(t)});
}
Formula Formula::iff(Formula l, Formula r) { return conj(implies(l, r), implies(r, l)); }

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const TypeExpr& Formula::type() const { return at(node_->types, 0, "Formula::type"); }
const Formula& Formula::left() const { return at(node_->formulas, 0, "Formula::left"); }
const Formula& Formula::right() const { return at(node_->formulas, 1, "Formula::right"); }

bool binds(TypeExpr::Kind k) {
  return k == TypeExpr::Kind::Pi || k == TypeExpr::Kind::Sigma || k == TypeExpr::Kind::W;
}
bool binds(Term::Kind k) { return k == Term::Kind::Lambda; }
bool binds(Formula::Kind k) { return k == Formula::Kind::Forall || k == Formula::Kind::Exists; }

// --------------------------------------------------------------- Signature

bool Signature::has_base(const std::string& t) const {
  return std::find(base_types.begin(), base_types.end(), t) != base_types.end();
}
const FunSymbol* Signature::find_fun(const std::string& f) const {
  for (const auto& s : fun_symbols)
    if (s.name == f) return &s;
  return nullptr;
}
const RelSymbol* Signature::find_rel(const std::string& r) const {
  for (const auto& s : rel_symbols)
    if (s.name == r) return &s;
  return nullptr;
}

const TypeExpr* Context::lookup(const std::string& var) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->var == var) return &it->type;
  return nullptr;
}

Context Context::extended(std::string var, TypeExpr type) const {
  Context c = *this;
  c.entries.push_back({std::move(var), std::move(type)});
  return c;
}

// ---------------------------------------------------------------- printing

namespace {

void print(std::ostream& os, const TypeExpr& t);
void print(std::ostream& os, const Term& t);
void print(std::ostream& os, const Formula& f);

void print(std::ostream& os, const TypeExpr& t) {
  using K = TypeExpr::Kind;
  switch (t.kind()) {
    case K::Base: os << t.name(); return;
    case K::Zero: os << '0'; return;
    case K::Unit: os << '1'; return;
    case K::Prop: os << "Prop"; return;
    case K::Universe: os << "Type"; return;
    case K::Product:
    case K::Coproduct:
    case K::Arrow:
      os << '(' << (t.kind() == K::Product ? "*" : t.kind() == K::Coproduct ? "+" : "->") << ' ';
      print(os, t.left());
      os << ' ';
      print(os, t.right());
      os << ')';
      return;
    case K::Pi:
    case K::Sigma:
    case K::W:
      os << '(' << (t.kind() == K::Pi ? "pi" : t.kind() == K::Sigma ? "sigma" : "W") << " (" << t.binder() << ' ';
      print(os, t.index());
      os << ") ";
      print(os, t.body());
      os << ')';
      return;
    case K::Power:
      os << "(P ";
      print(os, t.inner());
      os << ')';
      return;
    case K::Fin:
    case K::Subtype:
      os << (t.kind() == K::Fin ? "(fin " : "(sub ");
      print(os, t.term());
      os << ')';
      return;
    case K::PropType:
      os << "(prop ";
      print(os, t.formula());
      os << ')';
      return;
    case K::Family:
      os << '(' << t.name();
      for (const auto& a : t.args()) {
        os << ' ';
        print(os, a);
      }
      os << ')';
      return;
    case K::Case:
      os << "(case ";
      print(os, t.term());
      os << ' ';
      print(os, t.left());
      os << ' ';
      print(os, t.right());
      os << ')';
      return;
  }
}

void print(std::ostream& os, const Term& t) {
  using K = Term::Kind;
  auto unary = [&](const char* head) {
    os << '(' << head << ' ';
    print(os, t.sub(0));
    os << ')';
  };
  switch (t.kind()) {
    case K::Var: os << t.name(); return;
    case K::App: {
      os << '(';
      print(os, t.head());
      for (const auto& a : t.args()) {
        os << ' ';
        print(os, a);
      }
      os << ')';
      return;
    }
    case K::Pair:
      os << "(pair ";
      print(os, t.sub(0));
      os << ' ';
      print(os, t.sub(1));
      os << ')';
      return;
    case K::Proj1: unary("pr1"); return;
    case K::Proj2: unary("pr2"); return;
    case K::Inl: unary("inl"); return;
    case K::Inr: unary("inr"); return;
    case K::Absurd: unary("absurd"); return;
    case K::Lambda:
      os << "(lambda (" << t.binder() << ' ';
      print(os, t.type());
      os << ") ";
      print(os, t.body());
      os << ')';
      return;
    case K::TupleProj:
      os << "(proj ";
      print(os, t.sub(0));
      os << ' ' << t.index() << ')';
      return;
    case K::Sup:
      os << "(sup ";
      print(os, t.sub(0));
      os << ' ';
      print(os, t.sub(1));
      os << ')';
      return;
    case K::FormulaTerm:
      os << "(prop ";
      print(os, t.as_formula());
      os << ')';
      return;
    case K::Star: os << '*'; return;
    case K::Ann:
      os << "(the ";
      print(os, t.type());
      os << ' ';
      print(os, t.sub(0));
      os << ')';
      return;
    case K::Lit:
      os << "(lit ";
      print(os, t.type());
      os << ' ' << t.value() << ')';
      return;
  }
}

void print(std::ostream& os, const Formula& f) {
  using K = Formula::Kind;
  auto binary = [&](const char* head) {
    os << '(' << head << ' ';
    print(os, f.left());
    os << ' ';
    print(os, f.right());
    os << ')';
  };
  switch (f.kind()) {
    case K::Rel:
      os << "(rel " << f.name();
      for (const auto& a : f.terms()) {
        os << ' ';
        print(os, a);
      }
      os << ')';
      return;
    case K::Eq:
      os << "(= ";
      print(os, f.type());
      os << ' ';
      print(os, f.terms()[0]);
      os << ' ';
      print(os, f.terms()[1]);
      os << ')';
      return;
    case K::Member:
      os << "(in ";
      print(os, f.terms()[0]);
      os << ' ';
      print(os, f.terms()[1]);
      os << ')';
      return;
    case K::Top: os << "true"; return;
    case K::Bottom: os << "false"; return;
    case K::And: binary("and"); return;
    case K::Or: binary("or"); return;
    case K::Implies: binary("implies"); return;
    case K::Not:
      os << "(not ";
      print(os, f.body());
      os << ')';
      return;
    case K::Forall:
    case K::Exists:
      os << '(' << (f.kind() == K::Forall ? "forall" : "exists") << " (" << f.name() << ' ';
      print(os, f.type());
      os << ") ";
      print(os, f.body());
      os << ')';
      return;
  }
}

template <class T>
std::string render(const T& x) {
  std::ostringstream os;
  print(os, x);
  return os.str();
}

}  // namespace

std::string to_string(const TypeExpr& t) { return render(t); }
std::string to_string(const Term& t) { return render(t); }
std::string to_string(const Formula& f) { return render(f); }
std::string to_string(const Context& c) {
  std::ostringstream os;
  os << "(ctx";
  for (const auto& e : c.entries) {
    os << " (" << e.var << ' ';
    print(os, e.type);
    os << ')';
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------- free variables

namespace {

template <class Node>
bool node_binds(const Node& n) {
  return binds(n.kind);
}

// The binder of a binding node scopes over the last child of the node's own sort.
template <class Own, class Node, class Child>
bool is_bound_child(const Node& n, const std::vector<Child>& children, std::size_t i) {
  return std::is_same_v<Own, Child> && node_binds(n) && i + 1 == children.size();
}

template <class Own, class Node>
void collect_children(const Node& n, std::set<std::string>& out) {
  auto add = [&](const auto& children) {
    for (std::size_t i = 0; i < children.size(); ++i) {
      auto fv = free_vars(children[i]);
      if (is_bound_child<Own>(n, children, i)) fv.erase(n.name);
      out.insert(fv.begin(), fv.end());
    }
  };
  add(n.types);
  add(n.terms);
  add(n.formulas);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  if (t.kind() == Term::Kind::Var) {
    out.insert(t.name());
    return out;
  }
  collect_children<Term>(t.node(), out);
  return out;
}

std::set<std::string> free_vars(const TypeExpr& t) {
  std::set<std::string> out;
  collect_children<TypeExpr>(t.node(), out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect_children<Formula>(f.node(), out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  while (avoid.count(candidate)) candidate += "'";
  return candidate;
}

// ------------------------------------------------------------ substitution

namespace {

template <class Own, class Node>
Node substitute_node(const Node& n, const Substitution& s) {
  Node out = n;
  if (!node_binds(n)) {
    for (auto& c : out.types) c = substitute(c, s);
    for (auto& c : out.terms) c = substitute(c, s);
    for (auto& c : out.formulas) c = substitute(c, s);
    return out;
  }

  std::vector<Own>* own = nullptr;
  if constexpr (std::is_same_v<Own, TypeExpr>) own = &out.types;
  if constexpr (std::is_same_v<Own, Term>) own = &out.terms;
  if constexpr (std::is_same_v<Own, Formula>) own = &out.formulas;

  // Unbound children see the full substitution.
  for (std::size_t i = 0; i < out.types.size(); ++i)
    if (!is_bound_child<Own>(n, out.types, i)) out.types[i] = substitute(out.types[i], s);
  for (std::size_t i = 0; i < out.terms.size(); ++i)
    if (!is_bound_child<Own>(n, out.terms, i)) out.terms[i] = substitute(out.terms[i], s);
  for (std::size_t i = 0; i < out.formulas.size(); ++i)
    if (!is_bound_child<Own>(n, out.formulas, i)) out.formulas[i] = substitute(out.formulas[i], s);

  Own& bound = own->back();
  const auto bound_fv = free_vars(bound);
  Substitution inner;
  bool capture = false;
  for (const auto& [x, a] : s) {
    if (x == n.name || !bound_fv.count(x)) continue;
    if (std::any_of(inner.begin(), inner.end(), [&](const auto& e) { return e.first == x; })) continue;
    inner.emplace_back(x, a);
    if (free_vars(a).count(n.name)) capture = true;
  }
  if (inner.empty()) return out;
  if (capture) {
    std::set<std::string> avoid = bound_fv;
    avoid.insert(n.name);
    for (const auto& [x, a] : inner) {
      avoid.insert(x);
      const auto fa = free_vars(a);
      avoid.insert(fa.begin(), fa.end());
    }
    out.name = fresh_name(n.name, avoid);
    inner.emplace_back(n.name, Term::var(out.name));
  }
  bound = substitute(bound, inner);
  return out;
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.kind() == Term::Kind::Var) {
    for (const auto& [x, a] : s)
      if (x == t.name()) return a;
    return t;
  }
  return Term::from_node(substitute_node<Term>(t.node(), s));
}

TypeExpr substitute(const TypeExpr& t, const Substitution& s) {
  if (s.empty()) return t;
  return TypeExpr::from_node(substitute_node<TypeExpr>(t.node(), s));
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  return Formula::from_node(substitute_node<Formula>(f.node(), s));
}

// -------------------------------------------------------- alpha-equivalence

namespace {

struct Scopes {
  std::vector<std::string> left, right;
};

bool aeq(const TypeExpr& a, const TypeExpr& b, Scopes& sc);
bool aeq(const Term& a, const Term& b, Scopes& sc);
bool aeq(const Formula& a, const Formula& b, Scopes& sc);

std::ptrdiff_t depth_of(const std::vector<std::string>& scope, const std::string& x) {
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == x) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

template <class Own, class Node>
bool aeq_node(const Node& a, const Node& b, Scopes& sc) {
  if (a.kind != b.kind) return false;
  const bool binder = node_binds(a);
  if (!binder && a.name != b.name) return false;
  if (a.types.size() != b.types.size() || a.terms.size() != b.terms.size() ||
      a.formulas.size() != b.formulas.size())
    return false;
  auto compare = [&](const auto& xs, const auto& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const bool bound = is_bound_child<Own>(a, xs, i);
      if (bound) {
        sc.left.push_back(a.name);
        sc.right.push_back(b.name);
      }
      const bool ok = aeq(xs[i], ys[i], sc);
      if (bound) {
        sc.left.pop_back();
        sc.right.pop_back();
      }
      if (!ok) return false;
    }
    return true;
  };
  return compare(a.types, b.types) && compare(a.terms, b.terms) && compare(a.formulas, b.formulas);
}

bool aeq(const TypeExpr& a, const TypeExpr& b, Scopes& sc) { return aeq_node<TypeExpr>(a.node(), b.node(), sc); }

bool aeq(const Term& a, const Term& b, Scopes& sc) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Term::Kind::Var) {
    const auto da = depth_of(sc.left, a.name());
    const auto db = depth_of(sc.right, b.name());
    if (da < 0 && db < 0) return a.name() == b.name();
    return da == db;
  }
  if (a.node().index != b.node().index) return false;
  if (a.node().value != b.node().value) return false;
  return aeq_node<Term>(a.node(), b.node(), sc);
}

bool aeq(const Formula& a, const Formula& b, Scopes& sc) { return aeq_node<Formula>(a.node(), b.node(), sc); }

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  Scopes sc;
  return aeq(a, b, sc);
}
bool alpha_equal(const TypeExpr& a, const TypeExpr& b) {
  Scopes sc;
  return aeq(a, b, sc);
}
bool alpha_equal(const Formula& a, const Formula& b) {
  Scopes sc;
  return aeq(a, b, sc);
}

}  // namespace mulingua
