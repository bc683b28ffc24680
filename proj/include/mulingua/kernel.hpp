#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mulingua/syntax.hpp"

namespace mulingua {

/// Boolean result carrying the first (leftmost-innermost) diagnostic.
struct Verdict {
  bool ok = true;
  std::string message;

  static Verdict success() { return {}; }
  static Verdict failure(std::string msg) { return {false, std::move(msg)}; }
  explicit operator bool() const { return ok; }
};

/// Raised inside the checker; converted to a Verdict at the public surface.
class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Verdict validate_signature(const Signature& sig);
Verdict well_formed_context(const Signature& sig, const Context& ctx);
Verdict well_formed_type(const Signature& sig, const Context& ctx, const TypeExpr& t);
Verdict check_term(const Signature& sig, const Context& ctx, const Term& term, const TypeExpr& expected);

struct Synthesis {
  std::optional<TypeExpr> type;
  std::string message;
  explicit operator bool() const { return type.has_value(); }
};

/// Synthesis mode of the bidirectional checker (elimination forms, variables, annotations).
Synthesis synthesize(const Signature& sig, const Context& ctx, const Term& term);

/// Definitional equality: alpha-equivalence after unfolding P A to A -> Prop and
/// reducing Case on literal injections.
bool types_equal(const TypeExpr& a, const TypeExpr& b);
TypeExpr normalize(const TypeExpr& t);

/// Internal entry points used by the logic layer; they throw TypeError.
namespace checker {
void well_formed_type(const Signature& sig, const Context& ctx, const TypeExpr& t);
void check(const Signature& sig, const Context& ctx, const Term& term, const TypeExpr& expected);
TypeExpr synth(const Signature& sig, const Context& ctx, const Term& term);
void well_formed_formula(const Signature& sig, const Context& ctx, const Formula& f);
}  // namespace checker

/// Morphism Gamma -> Delta of the classifying category: one term per entry of Delta.
struct ContextMorphism {
  Context source;
  Context target;
  std::vector<Term> components;
};

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool contexts_equal(const Context& a, const Context& b);
ContextMorphism identity_morphism(const Context& ctx);
Verdict check_morphism(const Signature& sig, const ContextMorphism& m);
/// g after f. Requires f.target == g.source; throws ContextMismatch otherwise.
ContextMorphism compose_context_morphisms(const ContextMorphism& f, const ContextMorphism& g);
bool morphisms_alpha_equal(const ContextMorphism& a, const ContextMorphism& b);

}  // namespace mulingua
