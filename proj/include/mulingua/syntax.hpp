#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mulingua/value.hpp"

namespace mulingua {

class TypeExpr;
class Term;
class Formula;

namespace detail {
struct TypeNode;
struct TermNode;
struct FormulaNode;
}  // namespace detail

/// Type expression over a signature.
///
/// Binding forms (Pi, Sigma, W) bind `binder()` in `body()`. Fin, Subtype,
/// PropType, Family and Case mention terms, which is how dependency enters.
/// Universe is the level-1 pseudo-type and only appears as the codomain of a
/// family symbol.
class TypeExpr {
 public:
  enum class Kind {
    Base, Zero, Unit, Prop, Universe,
    Product, Coproduct, Arrow,
    Pi, Sigma, W,
    Power,
    Fin,       // Fin(t): positions 0..k-1 where t denotes the k-th carrier atom
    Subtype,   // Subtype(P): elements of A satisfying P : A -> Prop
    PropType,  // a formula read as the type of its proofs
    Family,    // application of a Type-valued symbol
    Case,      // Case(t, L, R): L when t is a left injection, R otherwise
  };

  static TypeExpr base(std::string name);
  static TypeExpr zero();
  static TypeExpr unit();
  static TypeExpr prop();
  static TypeExpr universe();
  static TypeExpr product(TypeExpr left, TypeExpr right);
  static TypeExpr coproduct(TypeExpr left, TypeExpr right);
  static TypeExpr arrow(TypeExpr dom, TypeExpr cod);
  static TypeExpr pi(std::string binder, TypeExpr index, TypeExpr body);
  static TypeExpr sigma(std::string binder, TypeExpr index, TypeExpr body);
  static TypeExpr w(std::string binder, TypeExpr label, TypeExpr arity);
  static TypeExpr power(TypeExpr inner);
  static TypeExpr fin(Term bound);
  static TypeExpr subtype(Term predicate);
  static TypeExpr proposition(Formula f);
  static TypeExpr family(std::string symbol, std::vector<Term> args);
  static TypeExpr case_of(Term scrutinee, TypeExpr left, TypeExpr right);

  Kind kind() const;
  /// Base / Family name, or binder of Pi/Sigma/W.
  const std::string& name() const;
  const std::string& binder() const { return name(); }
  /// Product/Coproduct/Arrow/Case operands; index type of a binder form.
  const TypeExpr& left() const;
  const TypeExpr& right() const;
  const TypeExpr& index() const { return left(); }
  const TypeExpr& body() const { return right(); }
  const TypeExpr& inner() const;
  const Term& term() const;
  const std::vector<Term>& args() const;
  const Formula& formula() const;

  const detail::TypeNode& node() const { return *node_; }
  static TypeExpr from_node(detail::TypeNode n);

 private:
  explicit TypeExpr(std::shared_ptr<const detail::TypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TypeNode> node_;
};

/// Term syntax. Application heads are terms; a head `Var f` that is not bound
/// in the context resolves to the signature symbol `f`.
class Term {
 public:
  enum class Kind {
    Var, App, Pair, Proj1, Proj2, Inl, Inr, Lambda, TupleProj, Sup, FormulaTerm, Star, Absurd,
    Ann,  // (the A t): checks t against A, synthesizes A
    Lit,  // semantic literal with its type; internal, not part of the file syntax
  };

  static Term var(std::string name);
  static Term app(Term head, std::vector<Term> args);
  static Term call(std::string symbol, std::vector<Term> args);
  static Term pair(Term a, Term b);
  static Term proj1(Term t);
  static Term proj2(Term t);
  static Term inl(Term t);
  static Term inr(Term t);
  static Term lambda(std::string binder, TypeExpr annot, Term body);
  /// 1-based projection from a right-nested tuple.
  static Term tuple_proj(Term t, std::size_t index);
  static Term sup(Term label, Term branches);
  static Term formula(Formula f);
  static Term star();
  static Term absurd(Term t);
  static Term ann(Term t, TypeExpr type);
  static Term lit(TypeExpr type, Value v);

  Kind kind() const;
  const std::string& name() const;  // Var name or Lambda binder
  const std::string& binder() const { return name(); }
  const Term& head() const;         // App
  std::vector<Term> args() const;   // App
  const Term& sub(std::size_t i = 0) const;
  const TypeExpr& type() const;     // Lambda annotation, Ann/Lit type
  const Term& body() const { return sub(0); }
  std::size_t index() const;        // TupleProj
  const Formula& as_formula() const;
  const Value& value() const;       // Lit

  const detail::TermNode& node() const { return *node_; }
  static Term from_node(detail::TermNode n);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Higher-order formula; a term of type Prop.
class Formula {
 public:
  enum class Kind { Rel, Eq, Member, Top, Bottom, And, Or, Implies, Not, Forall, Exists };

  static Formula rel(std::string name, std::vector<Term> args);
  static Formula eq(TypeExpr type, Term lhs, Term rhs);
  static Formula member(Term elem, Term pred);
  static Formula top();
  static Formula bottom();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula negation(Formula f);
  static Formula forall(std::string var, TypeExpr type, Formula body);
  static Formula exists(std::string var, TypeExpr type, Formula body);
  /// (l => r) and (r => l)
  static Formula iff(Formula l, Formula r);

  Kind kind() const;
  const std::string& name() const;  // relation name or bound variable
  const std::vector<Term>& terms() const;
  const TypeExpr& type() const;     // Eq annotation, quantifier domain
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }

  const detail::FormulaNode& node() const { return *node_; }
  static Formula from_node(detail::FormulaNode n);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

// Uniform node layout shared by the three syntactic sorts. The binder (when
// the kind has one) scopes over the last child of its own sort.
struct TypeNode {
  TypeExpr::Kind kind = TypeExpr::Kind::Unit;
  std::string name;
  std::vector<TypeExpr> types;
  std::vector<Term> terms;
  std::vector<Formula> formulas;
};

struct TermNode {
  Term::Kind kind = Term::Kind::Star;
  std::string name;
  std::size_t index = 0;
  std::vector<TypeExpr> types;
  std::vector<Term> terms;
  std::vector<Formula> formulas;
  std::optional<Value> value;
};

struct FormulaNode {
  Formula::Kind kind = Formula::Kind::Top;
  std::string name;
  std::vector<TypeExpr> types;
  std::vector<Term> terms;
  std::vector<Formula> formulas;
};

}  // namespace detail

bool binds(TypeExpr::Kind k);
bool binds(Term::Kind k);
bool binds(Formula::Kind k);

struct FunSymbol {
  std::string name;
  std::vector<TypeExpr> domain;
  TypeExpr codomain;
  std::size_t arity() const { return domain.size(); }
  bool is_constant() const { return domain.empty(); }
  bool is_family() const { return codomain.kind() == TypeExpr::Kind::Universe; }
};

struct RelSymbol {
  std::string name;
  std::vector<TypeExpr> arity_types;
  std::size_t arity() const { return arity_types.size(); }
};

struct Signature {
  std::string name;
  std::vector<std::string> base_types;
  std::vector<FunSymbol> fun_symbols;
  std::vector<RelSymbol> rel_symbols;

  bool has_base(const std::string& t) const;
  const FunSymbol* find_fun(const std::string& f) const;
  const RelSymbol* find_rel(const std::string& r) const;
};

struct ContextEntry {
  std::string var;
  TypeExpr type;
};

/// Telescope of typed variables; later entries may depend on earlier ones.
struct Context {
  std::vector<ContextEntry> entries;

  const TypeExpr* lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return lookup(var) != nullptr; }
  Context extended(std::string var, TypeExpr type) const;
  std::size_t size() const { return entries.size(); }
};

// ---- printing (S-expression syntax shared with the DSL) ----
std::string to_string(const TypeExpr& t);
std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Context& c);

// ---- binding-aware operations ----
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const TypeExpr& t);
std::set<std::string> free_vars(const Formula& f);

using Substitution = std::vector<std::pair<std::string, Term>>;

/// Simultaneous capture-avoiding substitution; bound variables that would
/// capture a free variable of a substituted term are renamed with primes.
Term substitute(const Term& t, const Substitution& s);
TypeExpr substitute(const TypeExpr& t, const Substitution& s);
Formula substitute(const Formula& f, const Substitution& s);

bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const TypeExpr& a, const TypeExpr& b);
bool alpha_equal(const Formula& a, const Formula& b);

/// Fresh variant of `base` (base', base'', ...) not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace mulingua
