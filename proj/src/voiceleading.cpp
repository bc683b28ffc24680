#include "mulingua/voiceleading.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace mulingua::vl {

namespace {

std::size_t require_index(const FinSet& s, const Value& v, const std::string& what) {
  auto i = s.index_of(v);
  if (!i) throw VLError(what + " " + to_string(v) + " is not in the carrier");
  return *i;
}

const Value& table_lookup(const Structure& st, const std::string& f, const std::vector<Value>& args) {
  auto t = st.fun_tables.find(f);
  if (t == st.fun_tables.end()) throw VLError("group structure has no table for '" + f + "'");
  auto it = t->second.find(args);
  if (it == t->second.end()) throw VLError("'" + f + "' is undefined at these arguments");
  return it->second;
}

std::string show_set(const std::set<Value>& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& v : s) {
    os << (first ? "" : " ") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Quiver make_quiver(FinSet vertices, FinSet arrows, const std::vector<std::pair<Value, Value>>& ends) {
  if (ends.size() != arrows.size()) throw VLError("source/target maps must be total on arrows");
  Quiver q{std::move(vertices), std::move(arrows), {}, {}};
  for (const auto& [s, t] : ends) {
    q.src.push_back(require_index(q.vertices, s, "source"));
    q.tgt.push_back(require_index(q.vertices, t, "target"));
  }
  return q;
}

const FinSet& GroupAction::elements() const {
  auto it = group.carriers.find("G");
  if (it == group.carriers.end()) throw VLError("group structure has no carrier G");
  return it->second;
}

Value GroupAction::act(const Value& g, const Value& x) const {
  auto it = action.find({g, x});
  if (it == action.end()) throw VLError("action undefined at (" + to_string(g) + ", " + to_string(x) + ")");
  return it->second;
}

Value GroupAction::multiply(const Value& g, const Value& h) const { return table_lookup(group, "star", {g, h}); }
Value GroupAction::inverse(const Value& g) const { return table_lookup(group, "inv", {g}); }
Value GroupAction::identity() const { return table_lookup(group, "e", {}); }

Verdict check_action(const GroupAction& a, const FinSet& pitch) {
  try {
    const auto& g = a.elements();
    for (const auto& x : g)
      for (const auto& p : pitch)
        if (!pitch.contains(a.act(x, p)))
          return Verdict::failure("action sends " + to_string(p) + " outside the pitch carrier");
    const auto e = a.identity();
    for (const auto& p : pitch)
      if (a.act(e, p) != p) return Verdict::failure("identity law fails at " + to_string(p));
    for (const auto& x : g)
      for (const auto& y : g) {
        const auto xy = a.multiply(x, y);
        for (const auto& p : pitch)
          if (a.act(xy, p) != a.act(x, a.act(y, p)))
            return Verdict::failure("compatibility fails at (" + to_string(x) + " " + to_string(y) + " " +
                                    to_string(p) + ")");
      }
  } catch (const VLError& err) {
    return Verdict::failure(err.what());
  }
  return Verdict::success();
}

FinSet transporters(const GroupAction& a, const Value& x, const Value& y) {
  std::vector<Value> out;
  for (const auto& g : a.elements())
    if (a.act(g, x) == y) out.push_back(g);
  return FinSet(std::move(out));
}

FinSet fiber(const VLRule& rule, const FinSet& pitch, const Value& x, const Value& y) {
  if (const auto* ga = std::get_if<GroupAction>(&rule)) return transporters(*ga, x, y);
  if (const auto* wp = std::get_if<WindingPaths>(&rule)) {
    const auto n = static_cast<std::int64_t>(wp->modulus);
    const auto i = static_cast<std::int64_t>(require_index(pitch, x, "pitch"));
    const auto j = static_cast<std::int64_t>(require_index(pitch, y, "pitch"));
    const auto base = ((j - i) % n + n) % n;
    const auto w = static_cast<std::int64_t>(wp->max_winding);
    std::vector<Value> out;
    for (std::int64_t k = -w; k <= w; ++k) out.push_back(Value::rational(Rational(base + n * k)));
    return FinSet(std::move(out));
  }
  const auto& table = std::get<ExplicitTable>(rule).fibers;
  auto it = table.find({x, y});
  return it == table.end() ? FinSet{} : it->second;
}

Quiver vls(const FinSet& pitch, const VLRule& rule) {
  if (const auto* ga = std::get_if<GroupAction>(&rule)) {
    for (const auto& g : ga->elements())
      for (const auto& x : pitch)
        if (!pitch.contains(ga->act(g, x)))
          throw VLError("rule/pitch carrier mismatch: " + to_string(g) + " sends " + to_string(x) + " outside pitch");
  } else if (const auto* wp = std::get_if<WindingPaths>(&rule)) {
    if (wp->modulus != pitch.size())
      throw VLError("rule/pitch carrier mismatch: winding modulus " + std::to_string(wp->modulus) + " but " +
                    std::to_string(pitch.size()) + " pitches");
  } else {
    for (const auto& [key, _] : std::get<ExplicitTable>(rule).fibers)
      if (!pitch.contains(key.first) || !pitch.contains(key.second))
        throw VLError("rule/pitch carrier mismatch: table entry (" + to_string(key.first) + " " +
                      to_string(key.second) + ") outside pitch");
  }
  std::vector<Value> arrows;
  std::vector<std::size_t> src, tgt;
  for (std::size_t i = 0; i < pitch.size(); ++i)
    for (std::size_t j = 0; j < pitch.size(); ++j)
      for (const auto& t : fiber(rule, pitch, pitch[i], pitch[j])) {
        arrows.push_back(Value::pair(Value::pair(pitch[i], pitch[j]), t));
        src.push_back(i);
        tgt.push_back(j);
      }
  return Quiver{pitch, FinSet(std::move(arrows)), std::move(src), std::move(tgt)};
}

QuiverHom identity_hom(const Quiver& q) {
  QuiverHom h;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) h.gamma0.push_back(i);
  for (std::size_t i = 0; i < q.arrows.size(); ++i) h.gamma1.push_back(i);
  return h;
}

QuiverHom compose(const QuiverHom& f, const QuiverHom& g) {
  QuiverHom out;
  for (auto i : f.gamma0) out.gamma0.push_back(g.gamma0.at(i));
  for (auto i : f.gamma1) out.gamma1.push_back(g.gamma1.at(i));
  return out;
}

QuiverHom inverse(const QuiverHom& h) {
  auto invert = [](const std::vector<std::size_t>& m, const char* what) {
    std::vector<std::size_t> out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] >= m.size() || out[m[i]] != m.size()) throw VLError(std::string(what) + " map is not a bijection");
      out[m[i]] = i;
    }
    return out;
  };
  return {invert(h.gamma0, "vertex"), invert(h.gamma1, "arrow")};
}

Verdict check_quiver_hom(const Quiver& q1, const Quiver& q2, const QuiverHom& h) {
  if (h.gamma0.size() != q1.vertices.size()) return Verdict::failure("vertex map is not total");
  if (h.gamma1.size() != q1.arrows.size()) return Verdict::failure("arrow map is not total");
  for (auto v : h.gamma0)
    if (v >= q2.vertices.size()) return Verdict::failure("vertex map leaves the target quiver");
  for (auto a : h.gamma1)
    if (a >= q2.arrows.size()) return Verdict::failure("arrow map leaves the target quiver");
  for (std::size_t a = 0; a < q1.arrows.size(); ++a) {
    const auto b = h.gamma1[a];
    if (q2.src[b] != h.gamma0[q1.src[a]])
      return Verdict::failure("source square fails at arrow " + to_string(q1.arrows[a]) + ": image " +
                              to_string(q2.arrows[b]) + " starts at " + to_string(q2.source(b)) + ", expected " +
                              to_string(q2.vertices[h.gamma0[q1.src[a]]]));
    if (q2.tgt[b] != h.gamma0[q1.tgt[a]])
      return Verdict::failure("target square fails at arrow " + to_string(q1.arrows[a]) + ": image " +
                              to_string(q2.arrows[b]) + " ends at " + to_string(q2.target(b)) + ", expected " +
                              to_string(q2.vertices[h.gamma0[q1.tgt[a]]]));
  }
  return Verdict::success();
}

QuiverHom conjugation_automorphism(const Quiver& q, const GroupAction& a, const Value& phi) {
  if (!a.elements().contains(phi)) throw VLError(to_string(phi) + " is not an element of the acting group");
  const auto phi_inv = a.inverse(phi);
  QuiverHom h;
  for (const auto& x : q.vertices) h.gamma0.push_back(require_index(q.vertices, a.act(phi, x), "vertex image"));
  for (const auto& arrow : q.arrows) {
    const auto& ends = arrow.first();
    const auto g = a.multiply(a.multiply(phi, arrow.second()), phi_inv);
    const auto image =
        Value::pair(Value::pair(a.act(phi, ends.first()), a.act(phi, ends.second())), g);
    h.gamma1.push_back(require_index(q.arrows, image, "arrow image"));
  }
  return h;
}

std::vector<QuiverHom> enumerate_automorphisms(const Quiver& q, std::size_t budget) {
  const auto n = q.vertices.size();
  std::size_t factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    if (factorial > budget / k) {
      std::ostringstream os;
      os << "refusing to enumerate automorphisms: " << n << "! vertex bijections exceed the budget of " << budget
         << "; generate objective transformations with conjugation_automorphism instead";
      throw BudgetExceeded(os.str());
    }
    factorial *= k;
  }
  if (factorial > budget) throw BudgetExceeded("refusing to enumerate automorphisms: budget of 0");

  std::vector<std::vector<std::vector<std::size_t>>> between(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t a = 0; a < q.arrows.size(); ++a) between[q.src[a]][q.tgt[a]].push_back(a);
  auto count = [&](std::size_t u, std::size_t v) { return between[u][v].size(); };

  std::vector<QuiverHom> out;
  std::vector<std::size_t> img(n);
  std::vector<bool> used(n, false);

  std::vector<std::pair<std::size_t, std::size_t>> fibers;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (count(u, v)) fibers.emplace_back(u, v);

  std::vector<std::size_t> gamma1(q.arrows.size());
  std::function<void(std::size_t)> arrows_from = [&](std::size_t f) {
    if (f == fibers.size()) {
      if (out.size() >= budget) throw BudgetExceeded("more than " + std::to_string(budget) + " automorphisms");
      out.push_back({img, gamma1});
      return;
    }
    const auto [u, v] = fibers[f];
    const auto& from = between[u][v];
    auto to = between[img[u]][img[v]];
    do {
      for (std::size_t k = 0; k < from.size(); ++k) gamma1[from[k]] = to[k];
      arrows_from(f + 1);
    } while (std::next_permutation(to.begin(), to.end()));
  };

  std::function<void(std::size_t)> vertices_from = [&](std::size_t i) {
    if (i == n) {
      arrows_from(0);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool fits = count(i, i) == count(c, c);
      for (std::size_t j = 0; fits && j < i; ++j)
        fits = count(i, j) == count(c, img[j]) && count(j, i) == count(img[j], c);
      if (!fits) continue;
      used[c] = true;
      img[i] = c;
      vertices_from(i + 1);
      used[c] = false;
    }
  };
  vertices_from(0);
  return out;
}

std::vector<SubjectiveArrow> list_subjective(const Quiver& q) {
  std::vector<SubjectiveArrow> out;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& arrow = q.arrows[a];
    const bool triple = arrow.kind() == Value::Kind::Pair && arrow.first().kind() == Value::Kind::Pair &&
                        arrow.first().first() == q.source(a) && arrow.first().second() == q.target(a);
    out.push_back({q.source(a), q.target(a), triple ? arrow.second() : arrow});
  }
  return out;
}

Signature sigma_vls_signature() {
  Signature sig;
  sig.name = "VLS";
  sig.base_types = {"Pitch", "Arrow"};
  sig.fun_symbols.push_back({"vlr", {TypeExpr::base("Pitch"), TypeExpr::base("Pitch")},
                             TypeExpr::power(TypeExpr::base("Arrow"))});
  return sig;
}

Verdict validate(const SigmaVLSStructure& m) {
  for (const auto& x : m.pitch)
    for (const auto& y : m.pitch) {
      auto it = m.vlr.find({x, y});
      if (it == m.vlr.end())
        return Verdict::failure("vlr is not total: missing (" + to_string(x) + " " + to_string(y) + ")");
      for (const auto& t : it->second)
        if (!m.arrows.contains(t))
          return Verdict::failure("vlr(" + to_string(x) + ", " + to_string(y) + ") contains " + to_string(t) +
                                  " outside the arrow carrier");
    }
  if (m.vlr.size() != m.pitch.size() * m.pitch.size()) return Verdict::failure("vlr has entries outside Pitch x Pitch");
  return Verdict::success();
}

Structure to_structure(const SigmaVLSStructure& m, const std::string& name) {
  Structure st;
  st.name = name;
  st.signature = sigma_vls_signature();
  st.carriers["Pitch"] = m.pitch;
  st.carriers["Arrow"] = m.arrows;
  auto& table = st.fun_tables["vlr"];
  for (const auto& [key, subset] : m.vlr) {
    std::vector<Value::Entry> graph;
    for (const auto& t : m.arrows) graph.emplace_back(t, Value::truth(subset.contains(t)));
    table[{key.first, key.second}] = Value::table(std::move(graph));
  }
  return st;
}

SigmaVLSStructure from_structure(const Structure& st) {
  auto pitch = st.carriers.find("Pitch");
  auto arrows = st.carriers.find("Arrow");
  auto vlr = st.fun_tables.find("vlr");
  if (pitch == st.carriers.end() || arrows == st.carriers.end() || vlr == st.fun_tables.end())
    throw VLError("structure " + st.name + " does not interpret the VLS signature (Pitch, Arrow, vlr)");
  SigmaVLSStructure m{pitch->second, arrows->second, {}};
  for (const auto& [args, pred] : vlr->second) {
    if (args.size() != 2 || !pred.is_function()) throw VLError("vlr table of " + st.name + " is malformed");
    std::vector<Value> members;
    for (const auto& [t, holds] : pred.entries())
      if (holds.kind() == Value::Kind::Truth && holds.truth()) members.push_back(t);
    m.vlr[{args[0], args[1]}] = FinSet(std::move(members));
  }
  return m;
}

SigmaVLSStructure table_of(const FinSet& pitch, const FinSet& arrow_payloads, const VLRule& rule) {
  SigmaVLSStructure m{pitch, arrow_payloads, {}};
  for (const auto& x : pitch)
    for (const auto& y : pitch) m.vlr[{x, y}] = fiber(rule, pitch, x, y);
  return m;
}

Quiver vls_of_structure(const SigmaVLSStructure& m) { return vls(m.pitch, ExplicitTable{m.vlr}); }

QuiverHom hom_to_quiver_hom(const SigmaVLSStructure& m, const SigmaVLSStructure& n, const SigmaVLSIso& h) {
  auto bijection = [](const std::map<Value, Value>& f, const FinSet& from, const FinSet& to, const char* what) {
    std::set<Value> hit;
    for (const auto& x : from) {
      auto it = f.find(x);
      if (it == f.end()) throw VLError(std::string(what) + " component is not total: missing " + to_string(x));
      if (!to.contains(it->second)) throw VLError(std::string(what) + " component leaves the target carrier");
      if (!hit.insert(it->second).second) throw VLError(std::string(what) + " component is not injective");
    }
    if (hit.size() != to.size()) throw VLError(std::string(what) + " component is not surjective");
  };
  bijection(h.pitch, m.pitch, n.pitch, "pitch");
  bijection(h.arrow, m.arrows, n.arrows, "arrow");
  for (const auto& x : m.pitch)
    for (const auto& y : m.pitch) {
      std::set<Value> image, expected;
      if (auto it = m.vlr.find({x, y}); it != m.vlr.end())
        for (const auto& t : it->second) image.insert(h.arrow.at(t));
      const auto hx = h.pitch.at(x), hy = h.pitch.at(y);
      if (auto it = n.vlr.find({hx, hy}); it != n.vlr.end()) expected.insert(it->second.begin(), it->second.end());
      if (image != expected)
        throw VLError("vlr square fails at (" + to_string(x) + " " + to_string(y) + "): h[vlr(x, y)] = " +
                      show_set(image) + " but vlr(h x, h y) = " + show_set(expected));
    }
  const auto qm = vls_of_structure(m);
  const auto qn = vls_of_structure(n);
  QuiverHom out;
  for (const auto& x : qm.vertices) out.gamma0.push_back(*qn.vertices.index_of(h.pitch.at(x)));
  for (const auto& arrow : qm.arrows) {
    const auto& ends = arrow.first();
    const auto image = Value::pair(Value::pair(h.pitch.at(ends.first()), h.pitch.at(ends.second())),
                                   h.arrow.at(arrow.second()));
    out.gamma1.push_back(*qn.arrows.index_of(image));
  }
  return out;
}

std::string to_dot(const Quiver& q, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n";
  for (const auto& v : q.vertices) os << "  " << dot_quote(to_string(v)) << ";\n";
  const auto arrows = list_subjective(q);
  for (const auto& a : arrows)
    os << "  " << dot_quote(to_string(a.source)) << " -> " << dot_quote(to_string(a.target))
       << " [label=" << dot_quote(to_string(a.payload)) << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mulingua::vl
