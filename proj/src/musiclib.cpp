#include "mulingua/musiclib.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mulingua::music {

namespace {

TypeExpr base(const char* name) { return TypeExpr::base(name); }
Term var(const char* name) { return Term::var(name); }
Term call(const char* f, std::vector<Term> args) { return Term::call(f, std::move(args)); }
Formula eq(const char* type, Term l, Term r) { return Formula::eq(base(type), std::move(l), std::move(r)); }

Context ctx(std::initializer_list<std::pair<const char*, const char*>> entries) {
  Context c;
  for (const auto& [x, t] : entries) c.entries.push_back({x, base(t)});
  return c;
}

void add_group_symbols(Signature& sig, const char* carrier) {
  const auto g = base(carrier);
  sig.fun_symbols.push_back({"star", {g, g}, g});
  sig.fun_symbols.push_back({"e", {}, g});
  sig.fun_symbols.push_back({"inv", {g}, g});
}

void add_group_tables(Structure& st, const FinSet& g, const std::function<std::size_t(std::size_t, std::size_t)>& op,
                      std::size_t e, const std::function<std::size_t(std::size_t)>& inv) {
  auto& star = st.fun_tables["star"];
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) star[{g[a], g[b]}] = g[op(a, b)];
  st.fun_tables["e"][{}] = g[e];
  auto& invt = st.fun_tables["inv"];
  for (std::size_t a = 0; a < g.size(); ++a) invt[{g[a]}] = g[inv(a)];
}

Structure cyclic(std::size_t n, bool subtract, const std::string& name) {
  Structure st;
  st.name = name;
  st.signature = group_signature();
  const auto g = make_numbered_carrier("G", n);
  st.carriers["G"] = g;
  add_group_tables(
      st, g, [n, subtract](std::size_t a, std::size_t b) { return subtract ? (a + n - b) % n : (a + b) % n; }, 0,
      [n](std::size_t a) { return (n - a) % n; });
  return st;
}

struct ChordIndex {
  FinSet carrier;
  std::map<std::vector<std::size_t>, Value> by_pcs;

  ChordIndex() {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> all;
    for (std::size_t a = 0; a < 12; ++a)
      for (std::size_t b = a + 1; b < 12; ++b)
        for (std::size_t c = b + 1; c < 12; ++c) {
          all.push_back({a, b, c});
          names.push_back(chord_name({a, b, c}));
        }
    carrier = make_carrier("Chord", names);
    for (std::size_t i = 0; i < all.size(); ++i) by_pcs.emplace(all[i], carrier[i]);
  }

  const Value& of(std::vector<std::size_t> pcs) const {
    std::sort(pcs.begin(), pcs.end());
    return by_pcs.at(pcs);
  }
};

const ChordIndex& chords() {
  static const ChordIndex index;
  return index;
}

std::string scale_atom_name(const ScaleLibrary::Entry& e) { return e.tonic + "-" + kind_name(e.kind); }

const char* kind_symbol(ScaleKind k) {
  switch (k) {
    case ScaleKind::Major: return "maj";
    case ScaleKind::NaturalMinor: return "nat";
    case ScaleKind::HarmonicMinor: return "harm";
  }
  return "?";
}

}  // namespace

Signature group_signature() {
  Signature sig;
  sig.name = "G";
  sig.base_types = {"G"};
  add_group_symbols(sig, "G");
  return sig;
}

Theory make_group_theory() {
  Theory th{"group", group_signature(), {}};
  const auto a = var("a"), b = var("b"), c = var("c"), g = var("g"), e = var("e");
  th.axioms.push_back({"associativity", ctx({{"a", "G"}, {"b", "G"}, {"c", "G"}}),
                       eq("G", call("star", {call("star", {a, b}), c}), call("star", {a, call("star", {b, c})}))});
  th.axioms.push_back({"identity", ctx({{"g", "G"}}),
                       Formula::conj(eq("G", call("star", {g, e}), g), eq("G", call("star", {e, g}), g))});
  th.axioms.push_back({"inverses", ctx({{"g", "G"}}),
                       Formula::conj(eq("G", call("star", {g, call("inv", {g})}), e),
                                     eq("G", call("star", {call("inv", {g}), g}), e))});
  return th;
}

Structure cyclic_group(std::size_t n) { return cyclic(n, false, "z" + std::to_string(n)); }
Structure cyclic_subtraction(std::size_t n) { return cyclic(n, true, "z" + std::to_string(n) + "sub"); }
Structure trivial_group() { return cyclic(1, false, "trivial"); }

Signature gis_signature() {
  Signature sig;
  sig.name = "GIS";
  sig.base_types = {"S", "IVLS"};
  add_group_symbols(sig, "IVLS");
  sig.fun_symbols.push_back({"int", {base("S"), base("S")}, base("IVLS")});
  sig.fun_symbols.push_back({"u", {base("S"), base("IVLS")}, base("S")});
  return sig;
}

Theory make_gis_theory() {
  Theory th{"gis", gis_signature(), {}};
  const auto r = var("r"), s = var("s"), t = var("t"), i = var("i");
  th.axioms.push_back({"composition", ctx({{"r", "S"}, {"s", "S"}, {"t", "S"}}),
                       eq("IVLS", call("star", {call("int", {r, s}), call("int", {s, t})}), call("int", {r, t}))});
  const auto transport = call("u", {s, i});
  th.axioms.push_back(
      {"unique-transport", ctx({{"s", "S"}, {"i", "IVLS"}}),
       Formula::conj(eq("IVLS", call("int", {s, transport}), i),
                     Formula::forall("t", base("S"),
                                     Formula::implies(eq("IVLS", call("int", {s, t}), i), eq("S", t, transport))))});
  return th;
}

Structure gis_structure(std::size_t n, std::function<std::size_t(std::size_t, std::size_t)> interval,
                        std::function<std::size_t(std::size_t, std::size_t)> section) {
  if (!interval) interval = [n](std::size_t x, std::size_t y) { return (y + n - x) % n; };
  if (!section) section = [n](std::size_t s, std::size_t i) { return (s + i) % n; };
  Structure st;
  st.name = "z" + std::to_string(n) + "gis";
  st.signature = gis_signature();
  const auto s = make_numbered_carrier("S", n);
  const auto ivls = make_numbered_carrier("IVLS", n);
  st.carriers["S"] = s;
  st.carriers["IVLS"] = ivls;
  add_group_tables(
      st, ivls, [n](std::size_t a, std::size_t b) { return (a + b) % n; }, 0,
      [n](std::size_t a) { return (n - a) % n; });
  auto& it = st.fun_tables["int"];
  auto& ut = st.fun_tables["u"];
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      it[{s[x], s[y]}] = ivls[interval(x, y) % n];
      ut[{s[x], ivls[y]}] = s[section(x, y) % n];
    }
  return st;
}

Value TIGroup::t(std::size_t k) const { return action.elements()[k % n]; }
Value TIGroup::i(std::size_t k) const { return action.elements()[n + k % n]; }

TIGroup ti_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("T/I group needs n > 0");
  TIGroup ti;
  ti.n = n;
  ti.pitch = pitch_classes(n);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("T" + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k) names.push_back("I" + std::to_string(k));
  const auto g = make_carrier("G", names);
  auto& st = ti.action.group;
  st.name = "ti";
  st.signature = group_signature();
  st.carriers["G"] = g;
  // element j < n is T_j, element n + j is I_j
  auto mul = [n](std::size_t a, std::size_t b) {
    const bool ia = a >= n, ib = b >= n;
    const std::size_t x = a % n, y = b % n;
    if (!ia && !ib) return (x + y) % n;
    if (!ia && ib) return n + (x + y) % n;
    if (ia && !ib) return n + (x + n - y) % n;
    return (x + n - y) % n;
  };
  add_group_tables(st, g, mul, 0, [n](std::size_t a) { return a >= n ? a : (n - a) % n; });
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t k = a % n;
      const std::size_t image = a < n ? (x + k) % n : (k + n - x) % n;
      ti.action.action[{g[a], ti.pitch[x]}] = ti.pitch[image];
    }
  return ti;
}

vl::SigmaVLSStructure ti_vls_table(const TIGroup& ti) {
  return vl::table_of(ti.pitch, ti.action.elements(), ti.action);
}

FinSet pitch_classes(std::size_t n) { return make_numbered_carrier("PC", n); }

std::size_t interval_class(std::size_t i, std::size_t n) {
  i %= n;
  return std::min(i, n - i);
}

Structure pitch_class_structure(std::size_t n) {
  Structure st;
  st.name = n == 12 ? "z12music" : "z" + std::to_string(n) + "music";
  st.signature.name = "PCSET";
  st.signature.base_types = {"PC", "Int", "IC"};
  st.signature.fun_symbols.push_back({"pcint", {base("PC"), base("PC")}, base("Int")});
  st.signature.fun_symbols.push_back({"intclass", {base("Int")}, base("IC")});
  const auto pc = pitch_classes(n);
  const auto in = make_numbered_carrier("Int", n);
  const auto ic = make_numbered_carrier("IC", n / 2 + 1);
  st.carriers["PC"] = pc;
  st.carriers["Int"] = in;
  st.carriers["IC"] = ic;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) st.fun_tables["pcint"][{pc[x], pc[y]}] = in[(y + n - x) % n];
  for (std::size_t i = 0; i < n; ++i) st.fun_tables["intclass"][{in[i]}] = ic[interval_class(i, n)];
  return st;
}

const std::array<std::string, 12>& note_names() {
  static const std::array<std::string, 12> names{"C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};
  return names;
}

std::size_t note_pc(const std::string& name) {
  const auto& names = note_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown note name '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

const char* kind_name(ScaleKind k) {
  switch (k) {
    case ScaleKind::Major: return "major";
    case ScaleKind::NaturalMinor: return "natural-minor";
    case ScaleKind::HarmonicMinor: return "harmonic-minor";
  }
  return "?";
}

const std::array<int, 7>& step_pattern(ScaleKind k) {
  static const std::array<int, 7> major{2, 2, 1, 2, 2, 2, 1};
  static const std::array<int, 7> natural{2, 1, 2, 2, 1, 2, 2};
  static const std::array<int, 7> harmonic{2, 1, 2, 2, 1, 3, 1};
  switch (k) {
    case ScaleKind::Major: return major;
    case ScaleKind::NaturalMinor: return natural;
    case ScaleKind::HarmonicMinor: return harmonic;
  }
  return major;
}

Scale make_scale(std::size_t tonic, ScaleKind kind) {
  Scale s{};
  std::size_t pc = tonic % 12;
  const auto& steps = step_pattern(kind);
  for (std::size_t d = 0; d < 7; ++d) {
    s[d] = pc;
    pc = (pc + static_cast<std::size_t>(steps[d])) % 12;
  }
  return s;
}

std::size_t scdeg(const Scale& s, std::size_t degree) {
  if (degree < 1 || degree > 7) throw std::out_of_range("scale degree " + std::to_string(degree) + " outside 1..7");
  return s[degree - 1];
}

std::vector<std::size_t> triad(const Scale& s, std::size_t degree) {
  if (degree < 1 || degree > 7) throw std::out_of_range("scale degree " + std::to_string(degree) + " outside 1..7");
  const auto d = degree - 1;
  std::vector<std::size_t> out{s[d], s[(d + 2) % 7], s[(d + 4) % 7]};
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_leading_tone(const Scale& s) { return (s[0] + 12 - s[6]) % 12 == 1; }

bool is_major_triad(const std::vector<std::size_t>& chord) {
  if (chord.size() != 3) return false;
  for (auto root : chord) {
    std::vector<std::size_t> want{root % 12, (root + 4) % 12, (root + 7) % 12};
    std::sort(want.begin(), want.end());
    auto got = chord;
    std::sort(got.begin(), got.end());
    if (want == got) return true;
  }
  return false;
}

std::string chord_name(const std::vector<std::size_t>& pcs) {
  std::string out;
  for (std::size_t i = 0; i < pcs.size(); ++i) out += (i ? "-" : "") + std::to_string(pcs[i]);
  return out;
}

const ScaleLibrary::Entry& ScaleLibrary::find(const std::string& tonic, ScaleKind kind) const {
  for (const auto& e : entries)
    if (e.tonic == tonic && e.kind == kind) return e;
  throw std::invalid_argument("no " + std::string(kind_name(kind)) + " scale on '" + tonic + "'");
}

ScaleLibrary scale_library() {
  ScaleLibrary lib;
  for (std::size_t pc = 0; pc < 12; ++pc)
    for (auto k : {ScaleKind::Major, ScaleKind::NaturalMinor, ScaleKind::HarmonicMinor})
      lib.entries.push_back({note_names()[pc], k, make_scale(pc, k)});
  return lib;
}

Structure leading_tone_predicates(const ScaleLibrary& lib) {
  Structure st;
  st.name = "leading-tone";
  st.signature.name = "LT";
  st.signature.base_types = {"Scale", "Chord"};
  st.signature.fun_symbols.push_back({"V", {base("Scale")}, base("Chord")});
  st.signature.rel_symbols.push_back({"containsLeadingTone", {base("Scale")}});
  st.signature.rel_symbols.push_back({"dominant", {base("Chord")}});

  std::vector<std::string> names;
  for (const auto& e : lib.entries) names.push_back(scale_atom_name(e));
  const auto scales = make_carrier("Scale", names);
  const auto& ch = chords();
  st.carriers["Scale"] = scales;
  st.carriers["Chord"] = ch.carrier;
  auto& lt = st.rel_tables["containsLeadingTone"];
  for (std::size_t i = 0; i < lib.entries.size(); ++i) {
    st.fun_tables["V"][{scales[i]}] = ch.of(triad(lib.entries[i].pcs, 5));
    if (contains_leading_tone(lib.entries[i].pcs)) lt.insert({scales[i]});
  }
  auto& dominant = st.rel_tables["dominant"];
  for (const auto& [pcs, c] : ch.by_pcs)
    if (is_major_triad(pcs)) dominant.insert({c});
  return st;
}

Structure harmony_structure(const ScaleLibrary& lib) {
  Structure st = leading_tone_predicates(lib);
  st.name = "harmony";
  st.signature.name = "HARMONY";
  auto& sig = st.signature;
  sig.base_types.insert(sig.base_types.begin(), {"NoteName", "Degree", "PC"});
  for (const char* f : {"maj", "nat", "harm"}) sig.fun_symbols.push_back({f, {base("NoteName")}, base("Scale")});
  sig.fun_symbols.push_back({"scdeg", {base("Scale"), base("Degree")}, base("PC")});
  sig.fun_symbols.push_back({"triad", {base("Scale"), base("Degree")}, base("Chord")});
  sig.rel_symbols.push_back({"contains", {base("Chord"), base("PC")}});

  const auto notes = make_carrier("NoteName", std::vector<std::string>(note_names().begin(), note_names().end()));
  const auto degrees = make_carrier("Degree", {"1", "2", "3", "4", "5", "6", "7"});
  const auto pc = pitch_classes(12);
  st.carriers["NoteName"] = notes;
  st.carriers["Degree"] = degrees;
  st.carriers["PC"] = pc;
  const auto& scales = st.carriers.at("Scale");
  const auto& ch = chords();
  for (std::size_t i = 0; i < lib.entries.size(); ++i) {
    const auto& e = lib.entries[i];
    st.fun_tables[kind_symbol(e.kind)][{notes[note_pc(e.tonic)]}] = scales[i];
    for (std::size_t d = 1; d <= 7; ++d) {
      st.fun_tables["scdeg"][{scales[i], degrees[d - 1]}] = pc[scdeg(e.pcs, d)];
      st.fun_tables["triad"][{scales[i], degrees[d - 1]}] = ch.of(triad(e.pcs, d));
    }
  }
  auto& contains = st.rel_tables["contains"];
  for (const auto& [pcs, c] : ch.by_pcs)
    for (auto p : pcs) contains.insert({c, pc[p]});
  return st;
}

Formula dominance_formula(const std::string& sctype) {
  return Formula::rel("dominant", {call("V", {Term::call(sctype, {var("n")})})});
}

Context note_context() { return ctx({{"n", "NoteName"}}); }

Structure domfunc_structure(DomfuncModel model) {
  Structure st;
  st.name = model == DomfuncModel::HarmonicMinor ? "domfunc" : model == DomfuncModel::Empty ? "domfunc-empty"
                                                                                              : "domfunc-adversarial";
  st.signature.name = "DOMFUNC";
  st.signature.base_types = {"Chord", "Key", "PC"};
  st.signature.fun_symbols.push_back({"lt", {base("Key")}, base("PC")});
  st.signature.rel_symbols.push_back({"domfunc", {base("Chord"), base("Key")}});
  st.signature.rel_symbols.push_back({"contains", {base("Chord"), base("PC")}});

  const auto& ch = chords();
  const auto keys = make_carrier("Key", std::vector<std::string>(note_names().begin(), note_names().end()));
  const auto pc = pitch_classes(12);
  st.carriers["Chord"] = ch.carrier;
  st.carriers["Key"] = keys;
  st.carriers["PC"] = pc;
  auto& domfunc = st.rel_tables["domfunc"];
  for (std::size_t k = 0; k < 12; ++k) {
    const auto harm = make_scale(k, ScaleKind::HarmonicMinor);
    st.fun_tables["lt"][{keys[k]}] = pc[scdeg(harm, 7)];
    if (model == DomfuncModel::Empty) continue;
    domfunc.insert({ch.of(triad(harm, 5)), keys[k]});
    domfunc.insert({ch.of(triad(harm, 7)), keys[k]});
  }
  if (model == DomfuncModel::Adversarial) {
    const auto a = note_pc("A");
    domfunc.insert({ch.of(triad(make_scale(a, ScaleKind::NaturalMinor), 5)), keys[a]});
  }
  auto& contains = st.rel_tables["contains"];
  for (const auto& [pcs, c] : ch.by_pcs)
    for (auto p : pcs) contains.insert({c, pc[p]});
  return st;
}

}  // namespace mulingua::music
