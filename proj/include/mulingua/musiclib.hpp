#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mulingua/semantics.hpp"
#include "mulingua/voiceleading.hpp"

namespace mulingua::music {

// ---- groups ----

/// (signature G (types G) (fun (star (G G) G) (e () G) (inv (G) G)))
Signature group_signature();
/// Associativity, identity and inverse laws, pointwise.
Theory make_group_theory();

/// Z_n under addition, carrier atoms "0".."n-1".
Structure cyclic_group(std::size_t n);
/// Z_n with subtraction as the operation; not a group for n > 2.
Structure cyclic_subtraction(std::size_t n);
Structure trivial_group();

// ---- generalized interval systems ----

/// Types S, IVLS; group symbols on IVLS; int : S S -> IVLS; u : S IVLS -> S.
Signature gis_signature();
/// composition: int(r,s) * int(s,t) = int(r,t);
/// unique-transport: int(s, u(s,i)) = i and every t with int(s,t) = i equals u(s,i).
Theory make_gis_theory();

/// S = IVLS = Z_n with the given interval function and section (defaults y - x and s + i).
Structure gis_structure(std::size_t n, std::function<std::size_t(std::size_t, std::size_t)> interval = {},
                        std::function<std::size_t(std::size_t, std::size_t)> section = {});

// ---- transpositions and inversions ----

/// T_k.x = x + k and I_k.x = k - x on Z_n; atoms "T0".."T{n-1}", "I0".."I{n-1}".
struct TIGroup {
  std::size_t n = 12;
  FinSet pitch;
  vl::GroupAction action;

  Value t(std::size_t k) const;
  Value i(std::size_t k) const;
  const Structure& group() const { return action.group; }
};

TIGroup ti_group(std::size_t n = 12);

/// Sigma_VLS structure with Arrow = T/I elements and vlr(x, y) = transporters.
vl::SigmaVLSStructure ti_vls_table(const TIGroup& ti);

// ---- pitch classes, intervals, interval classes ----

FinSet pitch_classes(std::size_t n = 12);
/// Representative min(i, n - i).
std::size_t interval_class(std::size_t i, std::size_t n);

/// PC, Int (= Z_n), IC (floor(n/2)+1 classes); pcint (x, y) -> y - x; intclass; add on PC.
Structure pitch_class_structure(std::size_t n = 12);

// ---- scales and chords ----

enum class ScaleKind { Major, NaturalMinor, HarmonicMinor };

const std::array<std::string, 12>& note_names();
/// Pitch class of a sharp spelling ("C" .. "B"); throws std::invalid_argument otherwise.
std::size_t note_pc(const std::string& name);
const char* kind_name(ScaleKind k);
/// Step pattern of the kind, summing to 12.
const std::array<int, 7>& step_pattern(ScaleKind k);

using Scale = std::array<std::size_t, 7>;

Scale make_scale(std::size_t tonic, ScaleKind kind);
/// Pitch class of degree d (1..7); throws std::out_of_range otherwise.
std::size_t scdeg(const Scale& s, std::size_t degree);
/// { s_d, s_(d+2), s_(d+4) } with indices mod 7, ascending; throws std::out_of_range unless 1 <= d <= 7.
std::vector<std::size_t> triad(const Scale& s, std::size_t degree);
/// Degree 7 lies one semitone below degree 1 (mod 12, descending).
bool contains_leading_tone(const Scale& s);
/// Root, major third, perfect fifth above some member.
bool is_major_triad(const std::vector<std::size_t>& chord);
/// Printed name of a pitch-class set, e.g. "0-4-7".
std::string chord_name(const std::vector<std::size_t>& pcs);

struct ScaleLibrary {
  struct Entry {
    std::string tonic;
    ScaleKind kind;
    Scale pcs;
  };
  std::vector<Entry> entries;  // note-major order, kinds in declaration order

  const Entry& find(const std::string& tonic, ScaleKind kind) const;
};

ScaleLibrary scale_library();

/// Scale carrier (one atom per library entry, named "A-harmonic-minor" etc.), Chord carrier
/// (3-subsets of Z_12), containsLeadingTone(Scale) from the step table and dominant(Chord)
/// from chord quality alone, plus V : Scale -> Chord = triad(-, 5).
Structure leading_tone_predicates(const ScaleLibrary& lib);

/// Adds NoteName, Degree and PC carriers with harm/nat/maj : NoteName -> Scale, scdeg,
/// triad : Scale Degree -> Chord and contains(Chord, PC) to leading_tone_predicates.
Structure harmony_structure(const ScaleLibrary& lib);

/// dominant(V(sctype(n))) in context (n NoteName), where sctype is harm, nat or maj.
Formula dominance_formula(const std::string& sctype);
Context note_context();

// ---- dominant function and leading tone ----

enum class DomfuncModel {
  HarmonicMinor,  // domfunc(c, k) iff c is V or vii of harm(k)
  Empty,          // domfunc holds nowhere
  Adversarial,    // as HarmonicMinor, plus the minor v chord of A (E G B) for key A
};

/// Chord, Key, PC; domfunc(Chord, Key), contains(Chord, PC), lt : Key -> PC (degree 7 of harm(k)).
Structure domfunc_structure(DomfuncModel model);

}  // namespace mulingua::music
