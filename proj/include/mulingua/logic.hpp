#pragma once

#include <functional>
#include <set>
#include <string>

#include "mulingua/kernel.hpp"
#include "mulingua/syntax.hpp"

namespace mulingua {

/// Every atom's arguments check against its relation's arity, both sides of an
/// equality check against its annotation, membership tests a predicate of the
/// element's type, and quantifiers extend the context (any type may be bound).
Verdict well_formed_formula(const Signature& sig, const Context& ctx, const Formula& f);

/// Depth of nested connectives and quantifiers; atoms have depth 0.
std::size_t formula_depth(const Formula& f);

/// Pre-order visit of every subformula.
void for_each_subformula(const Formula& f, const std::function<void(const Formula&)>& visit);

/// Strips a leading block of universal quantifiers into context entries.
std::pair<Context, Formula> split_universal_prefix(const Formula& f);

}  // namespace mulingua
