#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mulingua/semantics.hpp"

namespace mulingua::proofs {

/// A value inhabiting a type read as a proposition.
struct ProofObject {
  Value value;
  TypeExpr of;
};

struct Inhabitation {
  std::optional<ProofObject> proof;
  /// For a refuted Π-type: the first index whose fiber is empty.
  std::optional<Value> failing_index;
  /// Empty when inhabited; otherwise why the search failed.
  std::string reason;

  explicit operator bool() const { return proof.has_value(); }
};

/// First inhabitant of `t` in canonical enumeration order, if any.
/// Π-types are decided fiber by fiber without enumerating the section space.
Inhabitation inhabit(const Structure& st, const TypeExpr& t, const Environment& env = {},
                     const EvalOptions& opts = {});

/// Propositions-as-types translation: and -> *, or -> +, implies -> ->, forall -> pi,
/// exists -> sigma, true -> 1, false -> 0, not F -> (F -> 0); atoms become (prop F).
TypeExpr to_type(const Formula& f);

/// pi (i IC). sigma (p (* (sub C) (sub C))). intclass(pcint(pr1 p, pr2 p)) = i.
/// Requires PC, IC, pcint : PC PC -> Int and intclass : Int -> IC in `st`.
/// Throws std::invalid_argument when a chord member is not a PC element.
TypeExpr all_interval_type(const Structure& st, const std::vector<Value>& chord);

/// pi (x (sigma (c Chord) domfunc(c, k))). contains(pr1 x, lt(k)).
/// Requires Chord, Key, PC, domfunc, contains and lt in `st`.
TypeExpr domfunc_leading_tone_type(const Structure& st, const Value& key);

/// Proof rendering with pairs as (x, p) and sections as {i ↦ v, ...}.
std::string render(const Value& proof);

}  // namespace mulingua::proofs
