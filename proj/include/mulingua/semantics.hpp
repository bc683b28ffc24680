#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mulingua/kernel.hpp"
#include "mulingua/syntax.hpp"
#include "mulingua/value.hpp"

namespace mulingua {

/// Signals that a carrier is too large to materialize: the instance is not desk-scale.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runtime failure of interpretation (missing table entry, infinite W-type, ...).
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  std::size_t element_budget = 1'000'000;
  std::size_t w_depth_bound = 6;
};

/// Variable bindings; later entries shadow earlier ones.
using Environment = std::vector<std::pair<std::string, Value>>;

std::string to_string(const Environment& env);

/// Sigma-structure valued in finite sets.
struct Structure {
  std::string name;
  Signature signature;
  std::map<std::string, FinSet> carriers;
  std::map<std::string, std::map<std::vector<Value>, Value>> fun_tables;
  std::map<std::string, std::set<std::vector<Value>>> rel_tables;
  /// Tables of Type-valued symbols: argument tuple -> fiber.
  std::map<std::string, std::map<std::vector<Value>, FinSet>> family_tables;

  /// Looks up an element of a base carrier by its printed name.
  std::optional<Value> element(const std::string& type, const std::string& name) const;
};

/// Every table total on the product of its domain carriers and landing in its codomain.
Verdict validate_structure(const Structure& st, const EvalOptions& opts = {});

FinSet interpret_type(const Structure& st, const Environment& env, const TypeExpr& t, const EvalOptions& opts = {});
Value eval_term(const Structure& st, const Environment& env, const Term& term, const EvalOptions& opts = {});
bool eval_formula(const Structure& st, const Environment& env, const Formula& f, const EvalOptions& opts = {});

/// Structural membership v ∈ ⟦t⟧, materializing only the dependent leaves (Fin, Subtype, ...).
bool belongs(const Structure& st, const Environment& env, const TypeExpr& t, const Value& v,
             const EvalOptions& opts = {});

/// Number of elements of a type without materializing it when possible
/// (products, arrows and powers multiply out); throws BudgetExceeded past the budget.
std::size_t cardinality(const Structure& st, const Environment& env, const TypeExpr& t, const EvalOptions& opts = {});

/// Calls `visit` on every environment extending `base` over the telescope `ctx`,
/// in canonical order. Stops early when `visit` returns false.
void for_each_environment(const Structure& st, const Context& ctx, const Environment& base,
                          const std::function<bool(const Environment&)>& visit, const EvalOptions& opts = {});

/// First environment over `ctx` falsifying `f`, if any.
std::optional<Environment> find_counterexample(const Structure& st, const Context& ctx, const Formula& f,
                                               const EvalOptions& opts = {});

// ---- theories ----

struct Axiom {
  std::string name;
  Context context;
  Formula formula;
};

struct Theory {
  std::string name;
  Signature signature;
  std::vector<Axiom> axioms;
};

Verdict validate_theory(const Theory& th);

struct AxiomResult {
  std::string name;
  bool holds = true;
  std::optional<Environment> counterexample;
};

struct TheoryReport {
  std::vector<AxiomResult> results;

  bool all_pass() const;
  std::size_t passed() const;
  /// One line per axiom, then "<n> axioms, <k> pass".
  std::string to_text() const;
};

/// Evaluates each axiom under every substitution of its context (and any
/// leading universal quantifiers), recording the first falsifying environment.
TheoryReport check_theory(const Structure& st, const Theory& th, const EvalOptions& opts = {});

// ---- homomorphisms ----

struct StructureHom {
  const Structure* source = nullptr;
  const Structure* target = nullptr;
  std::map<std::string, std::map<Value, Value>> components;  // per base type
};

/// Maps a value of type `t` along the base components (base, 1, Prop, products, coproducts).
std::optional<Value> map_along(const StructureHom& h, const TypeExpr& t, const Value& v);

/// Naturality squares for every function symbol and preservation of every relation.
Verdict check_structure_hom(const StructureHom& h, const EvalOptions& opts = {});

}  // namespace mulingua
