#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mulingua/kernel.hpp"
#include "mulingua/semantics.hpp"

namespace mulingua::vl {

class VLError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (A, V, s, t). Source and target are stored as vertex indices per arrow index.
struct Quiver {
  FinSet vertices;
  FinSet arrows;
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;

  const Value& source(std::size_t arrow) const { return vertices[src[arrow]]; }
  const Value& target(std::size_t arrow) const { return vertices[tgt[arrow]]; }

  friend bool operator==(const Quiver&, const Quiver&) = default;
};

/// Builds a quiver from explicit endpoints (one (source, target) per arrow); throws VLError
/// when an endpoint is not a vertex.
Quiver make_quiver(FinSet vertices, FinSet arrows, const std::vector<std::pair<Value, Value>>& ends);

using PairKey = std::pair<Value, Value>;

/// Group (a structure over the group signature) acting on pitches: (g, x) -> g.x.
struct GroupAction {
  Structure group;
  std::map<PairKey, Value> action;

  const FinSet& elements() const;
  Value act(const Value& g, const Value& x) const;
  Value multiply(const Value& g, const Value& h) const;
  Value inverse(const Value& g) const;
  Value identity() const;
};

/// Homotopy classes of paths on the discretized circle Z_n, as displacements (y - x mod n) + n*w, |w| <= W.
struct WindingPaths {
  std::size_t modulus = 12;
  std::size_t max_winding = 1;
};

/// Fibers given directly; pairs without an entry have an empty fiber.
struct ExplicitTable {
  std::map<PairKey, FinSet> fibers;
};

using VLRule = std::variant<GroupAction, WindingPaths, ExplicitTable>;

/// Identity law e.x = x and compatibility (gh).x = g.(h.x), plus totality on G x pitch.
Verdict check_action(const GroupAction& a, const FinSet& pitch);

/// {g : g.x = y} in group carrier order.
FinSet transporters(const GroupAction& a, const Value& x, const Value& y);

/// The rule's fiber over (x, y).
FinSet fiber(const VLRule& rule, const FinSet& pitch, const Value& x, const Value& y);

/// Arrows ((x, y), t) for t in the fiber over (x, y), ordered by x, then y, then t.
/// Throws VLError when the rule's carriers do not fit `pitch`.
Quiver vls(const FinSet& pitch, const VLRule& rule);

/// Arrow map and vertex map, by index.
struct QuiverHom {
  std::vector<std::size_t> gamma0;
  std::vector<std::size_t> gamma1;

  friend bool operator==(const QuiverHom&, const QuiverHom&) = default;
};

QuiverHom identity_hom(const Quiver& q);
/// g after f.
QuiverHom compose(const QuiverHom& f, const QuiverHom& g);
/// Inverse of a bijective hom; throws VLError when a component is not a bijection.
QuiverHom inverse(const QuiverHom& h);

Verdict check_quiver_hom(const Quiver& q1, const Quiver& q2, const QuiverHom& h);

/// x -> phi.x on vertices, ((x, y), g) -> ((phi.x, phi.y), phi g phi^-1) on arrows.
/// `q` must be vls(pitch, a); throws VLError when phi is not a group element.
QuiverHom conjugation_automorphism(const Quiver& q, const GroupAction& a, const Value& phi);

/// All automorphisms, lexicographic in the vertex map; the identity comes first.
/// Refuses (BudgetExceeded, with a hint) when |V|! exceeds `budget`, and stops when more than
/// `budget` automorphisms exist.
std::vector<QuiverHom> enumerate_automorphisms(const Quiver& q, std::size_t budget);

struct SubjectiveArrow {
  Value source;
  Value target;
  Value payload;
};

/// Every arrow with its endpoints; payload is t for a vls arrow ((x, y), t), the arrow itself otherwise.
std::vector<SubjectiveArrow> list_subjective(const Quiver& q);

/// Finite model of the signature (types Pitch Arrow) (fun (vlr (Pitch Pitch) (P Arrow))).
struct SigmaVLSStructure {
  FinSet pitch;
  FinSet arrows;
  std::map<PairKey, FinSet> vlr;
};

Signature sigma_vls_signature();
Verdict validate(const SigmaVLSStructure& m);
Structure to_structure(const SigmaVLSStructure& m, const std::string& name);
/// Reads carriers Pitch, Arrow and the Prop-valued vlr table; throws VLError on any other shape.
SigmaVLSStructure from_structure(const Structure& st);
SigmaVLSStructure table_of(const FinSet& pitch, const FinSet& arrow_payloads, const VLRule& rule);

Quiver vls_of_structure(const SigmaVLSStructure& m);

/// Components of a structure map M -> N: bijections on Pitch and Arrow.
struct SigmaVLSIso {
  std::map<Value, Value> pitch;
  std::map<Value, Value> arrow;
};

/// The induced map ((x, y), t) -> ((h x, h y), h t) from vls(M) to vls(N). Throws VLError when a
/// component is not a bijection or the vlr square fails, naming the first violating (x, y).
QuiverHom hom_to_quiver_hom(const SigmaVLSStructure& m, const SigmaVLSStructure& n, const SigmaVLSIso& h);

/// Graphviz rendering with vertices and arrows in carrier order.
std::string to_dot(const Quiver& q, const std::string& name = "vls");

}  // namespace mulingua::vl
