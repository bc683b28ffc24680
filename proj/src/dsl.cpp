#include "mulingua/dsl.hpp"

#include <algorithm>
#include <sstream>

#include "mulingua/musiclib.hpp"

namespace mulingua::dsl {

namespace {

const std::set<std::string> kTypeHeads{"*", "+", "->", "pi", "sigma", "W", "P", "fin", "sub", "prop", "case"};
const std::set<std::string> kTermHeads{"pair", "pr1", "pr2", "inl", "inr", "lambda", "proj",
                                       "sup",  "prop", "absurd", "the", "lit"};

const std::string& symbol(const SExpr& e, const char* what) {
  if (!e.is_atom()) parse_fail(e, std::string("expected ") + what);
  return e.atom;
}

const SExpr& head_of(const SExpr& e, const char* sort) {
  if (!e.is_list || e.items.empty()) parse_fail(e, std::string("empty ") + sort);
  if (!e[0].is_atom()) parse_fail(e[0], std::string(sort) + " must start with a symbol");
  return e[0];
}

void expect_size(const SExpr& e, std::size_t n) {
  if (e.size() != n)
    parse_fail(e, "'" + e[0].atom + "' expects " + std::to_string(n - 1) + " operand(s), got " +
                      std::to_string(e.size() - 1));
}

void expect_at_least(const SExpr& e, std::size_t n) {
  if (e.size() < n)
    parse_fail(e, "'" + e[0].atom + "' expects at least " + std::to_string(n - 1) + " operand(s), got " +
                      std::to_string(e.size() - 1));
}

std::pair<std::string, TypeExpr> read_binder(const SExpr& e) {
  if (!e.is_list || e.size() != 2) parse_fail(e, "expected a binder (x A)");
  return {symbol(e[0], "a variable name"), read_type(e[1])};
}

template <class T, class Make>
T right_nested(const SExpr& e, std::size_t from, T (*read)(const SExpr&), Make make) {
  T acc = read(e[e.size() - 1]);
  for (std::size_t i = e.size() - 1; i-- > from;) acc = make(read(e[i]), acc);
  return acc;
}

}  // namespace

TypeExpr read_type(const SExpr& e) {
  if (e.is_atom()) {
    if (e.atom == "0") return TypeExpr::zero();
    if (e.atom == "1") return TypeExpr::unit();
    if (e.atom == "Prop") return TypeExpr::prop();
    if (e.atom == "Type") return TypeExpr::universe();
    if (kTypeHeads.count(e.atom)) parse_fail(e, "'" + e.atom + "' is a type constructor, not a type");
    return TypeExpr::base(e.atom);
  }
  const auto& h = head_of(e, "type expression").atom;
  if (h == "*" || h == "+" || h == "->") {
    expect_at_least(e, 3);
    auto make = h == "*" ? TypeExpr::product : h == "+" ? TypeExpr::coproduct : TypeExpr::arrow;
    return right_nested<TypeExpr>(e, 1, read_type, make);
  }
  if (h == "pi" || h == "sigma" || h == "W") {
    expect_size(e, 3);
    auto [x, a] = read_binder(e[1]);
    auto body = read_type(e[2]);
    if (h == "pi") return TypeExpr::pi(x, a, body);
    if (h == "sigma") return TypeExpr::sigma(x, a, body);
    return TypeExpr::w(x, a, body);
  }
  if (h == "P") {
    expect_size(e, 2);
    return TypeExpr::power(read_type(e[1]));
  }
  if (h == "fin" || h == "sub") {
    expect_size(e, 2);
    return h == "fin" ? TypeExpr::fin(read_term(e[1])) : TypeExpr::subtype(read_term(e[1]));
  }
  if (h == "prop") {
    expect_size(e, 2);
    return TypeExpr::proposition(read_formula(e[1]));
  }
  if (h == "case") {
    expect_size(e, 4);
    return TypeExpr::case_of(read_term(e[1]), read_type(e[2]), read_type(e[3]));
  }
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(read_term(e[i]));
  return TypeExpr::family(h, std::move(args));
}

Term read_term(const SExpr& e) {
  if (e.is_atom()) {
    if (e.atom == "*") return Term::star();
    return Term::var(e.atom);
  }
  if (e.items.empty()) parse_fail(e, "empty term");
  if (e[0].is_atom() && kTermHeads.count(e[0].atom)) {
    const auto& h = e[0].atom;
    if (h == "pair") {
      expect_size(e, 3);
      return Term::pair(read_term(e[1]), read_term(e[2]));
    }
    if (h == "pr1" || h == "pr2" || h == "inl" || h == "inr" || h == "absurd") {
      expect_size(e, 2);
      auto t = read_term(e[1]);
      if (h == "pr1") return Term::proj1(t);
      if (h == "pr2") return Term::proj2(t);
      if (h == "inl") return Term::inl(t);
      if (h == "inr") return Term::inr(t);
      return Term::absurd(t);
    }
    if (h == "lambda") {
      expect_size(e, 3);
      auto [x, a] = read_binder(e[1]);
      return Term::lambda(x, a, read_term(e[2]));
    }
    if (h == "proj") {
      expect_size(e, 3);
      const auto& k = symbol(e[2], "a tuple index");
      std::size_t index = 0;
      if (k.empty() || !std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          (index = std::stoul(k)) == 0)
        parse_fail(e[2], "tuple index must be a positive integer");
      return Term::tuple_proj(read_term(e[1]), index);
    }
    if (h == "sup") {
      expect_size(e, 3);
      return Term::sup(read_term(e[1]), read_term(e[2]));
    }
    if (h == "prop") {
      expect_size(e, 2);
      return Term::formula(read_formula(e[1]));
    }
    if (h == "the") {
      expect_size(e, 3);
      return Term::ann(read_term(e[2]), read_type(e[1]));
    }
    parse_fail(e[0], "'lit' terms are internal and cannot be written in source files");
  }
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(read_term(e[i]));
  return Term::app(read_term(e[0]), std::move(args));
}

Formula read_formula(const SExpr& e) {
  if (e.is_atom()) {
    if (e.atom == "true") return Formula::top();
    if (e.atom == "false") return Formula::bottom();
    parse_fail(e, "expected a formula, got symbol '" + e.atom + "'");
  }
  const auto& h = head_of(e, "formula").atom;
  if (h == "rel") {
    expect_at_least(e, 2);
    std::vector<Term> args;
    for (std::size_t i = 2; i < e.size(); ++i) args.push_back(read_term(e[i]));
    return Formula::rel(symbol(e[1], "a relation name"), std::move(args));
  }
  if (h == "=") {
    expect_size(e, 4);
    return Formula::eq(read_type(e[1]), read_term(e[2]), read_term(e[3]));
  }
  if (h == "in") {
    expect_size(e, 3);
    return Formula::member(read_term(e[1]), read_term(e[2]));
  }
  if (h == "and" || h == "or") {
    expect_at_least(e, 3);
    return right_nested<Formula>(e, 1, read_formula, h == "and" ? Formula::conj : Formula::disj);
  }
  if (h == "implies" || h == "iff") {
    expect_size(e, 3);
    return h == "implies" ? Formula::implies(read_formula(e[1]), read_formula(e[2]))
                          : Formula::iff(read_formula(e[1]), read_formula(e[2]));
  }
  if (h == "not") {
    expect_size(e, 2);
    return Formula::negation(read_formula(e[1]));
  }
  if (h == "forall" || h == "exists") {
    expect_size(e, 3);
    auto [x, a] = read_binder(e[1]);
    auto body = read_formula(e[2]);
    return h == "forall" ? Formula::forall(x, a, body) : Formula::exists(x, a, body);
  }
  parse_fail(e[0], "unknown formula head '" + h + "'");
}

Context read_context(const SExpr& e) {
  if (!e.has_head("ctx")) parse_fail(e, "expected (ctx (x A) ...)");
  Context c;
  for (std::size_t i = 1; i < e.size(); ++i) {
    auto [x, a] = read_binder(e[i]);
    c.entries.push_back({x, a});
  }
  return c;
}

// ---- values ----

namespace {

Value read_function(const Structure& st, const FinSet& dom, const SExpr& e, bool section,
                    const std::function<Value(const Value&, const SExpr&)>& read_image, bool prop_codomain) {
  std::map<Value, Value> given;
  if (e.has_head("set")) {
    if (!prop_codomain) parse_fail(e, "(set ...) denotes a predicate, but the codomain is not Prop");
    for (std::size_t i = 1; i < e.size(); ++i) {
      auto it = std::find_if(dom.begin(), dom.end(), [&](const Value& v) { return to_string(v) == to_string(e[i]); });
      if (it == dom.end()) parse_fail(e[i], "'" + to_string(e[i]) + "' is not in the domain");
      if (!given.emplace(*it, Value::truth(true)).second) parse_fail(e[i], "duplicate set member");
    }
    std::vector<Value::Entry> entries;
    for (const auto& x : dom) entries.emplace_back(x, Value::truth(given.count(x) != 0));
    return Value::table(std::move(entries));
  }
  if (!e.has_head(section ? "section" : "table")) parse_fail(e, section ? "expected (section (k v) ...)" : "expected (table (k v) ...) or (set ...)");
  for (std::size_t i = 1; i < e.size(); ++i) {
    const auto& kv = e[i];
    if (!kv.is_list || kv.size() != 2) parse_fail(kv, "expected an entry (k v)");
    auto it = std::find_if(dom.begin(), dom.end(), [&](const Value& v) { return to_string(v) == to_string(kv[0]); });
    if (it == dom.end()) parse_fail(kv[0], "'" + to_string(kv[0]) + "' is not in the domain");
    if (!given.emplace(*it, read_image(*it, kv[1])).second) parse_fail(kv[0], "duplicate entry");
  }
  std::vector<Value::Entry> entries;
  for (const auto& x : dom) {
    auto it = given.find(x);
    if (it == given.end()) parse_fail(e, "function is not total: missing " + to_string(x));
    entries.emplace_back(x, it->second);
  }
  (void)st;
  return section ? Value::section(std::move(entries)) : Value::table(std::move(entries));
}

}  // namespace

Value read_value(const Structure& st, const TypeExpr& type, const SExpr& e, const Environment& env) {
  using K = TypeExpr::Kind;
  const auto t = normalize(type);
  switch (t.kind()) {
    case K::Base: {
      const auto& name = symbol(e, ("an element of " + t.name()).c_str());
      if (auto v = st.element(t.name(), name)) return *v;
      parse_fail(e, "unknown element '" + name + "' of " + t.name());
    }
    case K::Unit:
      if (!e.is_symbol("*")) parse_fail(e, "expected *");
      return Value::star();
    case K::Prop:
      if (e.is_symbol("true")) return Value::truth(true);
      if (e.is_symbol("false")) return Value::truth(false);
      parse_fail(e, "expected true or false");
    case K::Product:
      if (!e.has_head("pair") || e.size() != 3) parse_fail(e, "expected (pair a b)");
      return Value::pair(read_value(st, t.left(), e[1], env), read_value(st, t.right(), e[2], env));
    case K::Coproduct:
      if (e.has_head("inl") && e.size() == 2) return Value::inl(read_value(st, t.left(), e[1], env));
      if (e.has_head("inr") && e.size() == 2) return Value::inr(read_value(st, t.right(), e[1], env));
      parse_fail(e, "expected (inl v) or (inr v)");
    case K::Arrow: {
      const auto dom = interpret_type(st, env, t.left());
      return read_function(
          st, dom, e, false, [&](const Value&, const SExpr& v) { return read_value(st, t.right(), v, env); },
          t.right().kind() == K::Prop);
    }
    case K::Pi: {
      if (!e.has_head("section")) break;
      const auto dom = interpret_type(st, env, t.index());
      return read_function(
          st, dom, e, true,
          [&](const Value& k, const SExpr& v) {
            auto extended = env;
            extended.emplace_back(t.binder(), k);
            return read_value(st, t.body(), v, extended);
          },
          false);
    }
    default:
      break;
  }
  const auto text = to_string(e);
  for (const auto& v : interpret_type(st, env, t))
    if (to_string(v) == text) return v;
  parse_fail(e, "'" + text + "' is not an element of " + to_string(type));
}

// ---- declarations ----

const std::string& name_of(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

const char* kind_of(const Declaration& d) {
  static const char* names[] = {"signature", "theory", "structure", "context", "term", "formula", "quiver"};
  return names[d.index()];
}

namespace {

struct FileParser {
  Workspace ws;
  std::size_t anonymous = 0;

  Signature signature_decl(const SExpr& e) {
    expect_at_least(e, 2);
    Signature sig;
    sig.name = symbol(e[1], "a signature name");
    for (std::size_t i = 2; i < e.size(); ++i) {
      const auto& sec = e[i];
      const auto& h = head_of(sec, "signature section").atom;
      for (std::size_t j = 1; j < sec.size(); ++j) {
        const auto& item = sec[j];
        if (h == "types") {
          sig.base_types.push_back(symbol(item, "a base type name"));
        } else if (h == "fun") {
          if (!item.is_list || item.size() != 3 || !item[1].is_list) parse_fail(item, "expected (f (A ...) B)");
          FunSymbol f{symbol(item[0], "a function symbol name"), {}, read_type(item[2])};
          for (const auto& a : item[1].items) f.domain.push_back(read_type(a));
          sig.fun_symbols.push_back(std::move(f));
        } else if (h == "rel") {
          if (!item.is_list || item.size() != 2 || !item[1].is_list) parse_fail(item, "expected (R (A ...))");
          RelSymbol r{symbol(item[0], "a relation name"), {}};
          for (const auto& a : item[1].items) r.arity_types.push_back(read_type(a));
          sig.rel_symbols.push_back(std::move(r));
        } else {
          parse_fail(sec[0], "unknown signature section '" + h + "'");
        }
      }
      if (h != "types" && h != "fun" && h != "rel") parse_fail(sec[0], "unknown signature section '" + h + "'");
    }
    if (auto v = validate_signature(sig); !v) parse_fail(e, v.message);
    return sig;
  }

  const Signature& lookup_signature(const SExpr& at) {
    const auto& name = symbol(at, "a signature name");
    const auto* sig = ws.signature(name);
    if (!sig) parse_fail(at, "unknown signature '" + name + "'");
    return *sig;
  }

  // [NAME] [over SIG] [(ctx ...)] BODY...; returns the index of the first body item.
  struct Header {
    std::optional<std::string> name;
    std::optional<std::string> signature;
    Context context;
  };

  Header header(const SExpr& e, std::size_t from, std::size_t body_items) {
    Header h;
    std::size_t i = from;
    const std::size_t end = e.size() - body_items;
    if (i < end && e[i].is_atom() && e[i].atom != "over") h.name = e[i++].atom;
    if (i < end && e[i].is_symbol("over")) {
      if (i + 1 >= end) parse_fail(e[i], "expected a signature name after 'over'");
      h.signature = lookup_signature(e[i + 1]).name;
      i += 2;
    }
    if (i < end && e[i].has_head("ctx")) h.context = read_context(e[i++]);
    if (i != end) parse_fail(i < e.size() ? e[i] : e, "unexpected item in declaration header");
    return h;
  }

  Theory theory_decl(const SExpr& e) {
    expect_at_least(e, 4);
    if (!e[2].is_symbol("over")) parse_fail(e[2], "expected 'over'");
    Theory th{symbol(e[1], "a theory name"), lookup_signature(e[3]), {}};
    for (std::size_t i = 4; i < e.size(); ++i) {
      const auto& ax = e[i];
      if (!ax.has_head("axiom") || ax.size() < 2) parse_fail(ax, "expected (axiom [NAME] [(ctx ...)] FORMULA)");
      auto h = header(ax, 1, 1);
      if (h.signature) parse_fail(ax, "axioms take the theory's signature");
      const auto name = h.name.value_or("axiom-" + std::to_string(th.axioms.size() + 1));
      for (const auto& prev : th.axioms)
        if (prev.name == name) parse_fail(ax, "duplicate axiom '" + name + "'");
      th.axioms.push_back({name, h.context, read_formula(ax[ax.size() - 1])});
    }
    return th;
  }

  Structure structure_decl(const SExpr& e) {
    expect_at_least(e, 4);
    if (!e[2].is_symbol("of")) parse_fail(e[2], "expected 'of'");
    Structure st;
    st.name = symbol(e[1], "a structure name");
    st.signature = lookup_signature(e[3]);
    const auto& sig = st.signature;
    for (std::size_t i = 4; i < e.size(); ++i) {
      const auto& c = e[i];
      const auto& h = head_of(c, "structure clause").atom;
      expect_at_least(c, 2);
      const auto& sym = symbol(c[1], "a symbol name");
      if (h == "carrier") {
        if (!sig.has_base(sym)) parse_fail(c[1], "unknown base type '" + sym + "'");
        if (st.carriers.count(sym)) parse_fail(c[1], "duplicate carrier '" + sym + "'");
        if (c.size() != 3 || !c[2].is_list) parse_fail(c, "expected (carrier T (e ...))");
        std::vector<std::string> names;
        for (const auto& x : c[2].items) names.push_back(symbol(x, "an element name"));
        try {
          st.carriers[sym] = make_carrier(sym, names);
        } catch (const std::exception& err) {
          parse_fail(c[2], err.what());
        }
      } else if (h == "fun" || h == "family") {
        const auto* f = sig.find_fun(sym);
        if (!f) parse_fail(c[1], "unknown function symbol '" + sym + "'");
        if (f->is_family() != (h == "family"))
          parse_fail(c[0], f->is_family() ? "use (family ...) for Type-valued symbols" : "'" + sym + "' is not a type family");
        for (std::size_t j = 2; j < c.size(); ++j) {
          const auto& entry = c[j];
          if (!entry.is_list || entry.size() != 2 || !entry[0].is_list) parse_fail(entry, "expected ((args ...) value)");
          if (entry[0].size() != f->arity())
            parse_fail(entry[0], "arity mismatch: '" + sym + "' expects " + std::to_string(f->arity()) + " argument(s)");
          std::vector<Value> args;
          for (std::size_t k = 0; k < f->arity(); ++k) args.push_back(read_value(st, f->domain[k], entry[0][k]));
          if (f->is_family()) {
            if (!entry[1].is_list) parse_fail(entry[1], "expected a fiber (e ...)");
            std::vector<std::string> names;
            for (const auto& x : entry[1].items) names.push_back(symbol(x, "an element name"));
            if (!st.family_tables[sym].emplace(args, make_carrier(sym, names)).second)
              parse_fail(entry, "duplicate entry");
          } else if (!st.fun_tables[sym].emplace(args, read_value(st, f->codomain, entry[1])).second) {
            parse_fail(entry, "duplicate entry");
          }
        }
        if (f->is_family()) st.family_tables[sym];
        else st.fun_tables[sym];
      } else if (h == "rel") {
        const auto* r = sig.find_rel(sym);
        if (!r) parse_fail(c[1], "unknown relation '" + sym + "'");
        auto& table = st.rel_tables[sym];
        for (std::size_t j = 2; j < c.size(); ++j) {
          const auto& tuple = c[j];
          if (!tuple.is_list || tuple.size() != r->arity())
            parse_fail(tuple, "expected a tuple of " + std::to_string(r->arity()) + " element(s)");
          std::vector<Value> vals;
          for (std::size_t k = 0; k < r->arity(); ++k) vals.push_back(read_value(st, r->arity_types[k], tuple[k]));
          if (!table.insert(vals).second) parse_fail(tuple, "duplicate tuple");
        }
      } else {
        parse_fail(c[0], "unknown structure clause '" + h + "'");
      }
    }
    return st;
  }

  ContextDecl context_decl(const SExpr& e) {
    expect_at_least(e, 2);
    ContextDecl d{symbol(e[1], "a context name"), {}};
    for (std::size_t i = 2; i < e.size(); ++i) {
      auto [x, a] = read_binder(e[i]);
      d.context.entries.push_back({x, a});
    }
    return d;
  }

  std::optional<std::string> default_signature() const {
    if (const auto* s = ws.last_signature()) return *s;
    return std::nullopt;
  }

  TermDecl term_decl(const SExpr& e) {
    expect_at_least(e, 4);
    auto h = header(e, 1, 2);
    if (!h.name) parse_fail(e, "term declarations need a name");
    return {*h.name, h.signature ? h.signature : default_signature(), h.context, read_term(e[e.size() - 2]),
            read_type(e[e.size() - 1])};
  }

  FormulaDecl formula_decl(const SExpr& e) {
    expect_at_least(e, 2);
    auto h = header(e, 1, 1);
    return {h.name.value_or("formula-" + std::to_string(++anonymous)), h.signature ? h.signature : default_signature(),
            h.context, read_formula(e[e.size() - 1])};
  }

  QuiverDecl quiver_decl(const SExpr& e) {
    expect_at_least(e, 3);
    QuiverDecl q;
    q.name = symbol(e[1], "a quiver name");
    if (e.size() == 3 && e[2].has_head("from")) {
      expect_size(e[2], 2);
      const auto& sname = symbol(e[2][1], "a structure name");
      const auto* st = ws.structure(sname);
      if (!st) parse_fail(e[2][1], "unknown structure '" + sname + "'");
      q.source = QuiverDecl::FromStructure{sname};
      try {
        q.quiver = vl::vls_of_structure(vl::from_structure(*st));
      } catch (const vl::VLError& err) {
        parse_fail(e[2], err.what());
      }
      return q;
    }
    if (e.size() == 3 && e[2].has_head("winding")) {
      expect_size(e[2], 3);
      auto number = [&](const SExpr& x) {
        const auto& s = symbol(x, "a natural number");
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
          parse_fail(x, "expected a natural number");
        return static_cast<std::size_t>(std::stoul(s));
      };
      const auto n = number(e[2][1]), w = number(e[2][2]);
      if (n == 0) parse_fail(e[2][1], "modulus must be positive");
      q.source = QuiverDecl::Winding{n, w};
      q.quiver = vl::vls(music::pitch_classes(n), vl::WindingPaths{n, w});
      return q;
    }
    QuiverDecl::Explicit ex;
    for (std::size_t i = 2; i < e.size(); ++i) {
      const auto& c = e[i];
      if (c.has_head("vertices")) {
        for (std::size_t j = 1; j < c.size(); ++j) ex.vertices.push_back(symbol(c[j], "a vertex name"));
      } else if (c.has_head("arrow")) {
        expect_size(c, 4);
        ex.arrows.push_back({symbol(c[1], "an arrow name"), symbol(c[2], "a vertex"), symbol(c[3], "a vertex")});
      } else {
        parse_fail(c, "expected (vertices ...), (arrow a s t), (from STRUCTURE) or (winding N W)");
      }
    }
    try {
      const auto vertices = make_carrier("Vertex", ex.vertices);
      std::vector<std::string> names;
      std::vector<std::pair<Value, Value>> ends;
      for (const auto& [a, s, t] : ex.arrows) names.push_back(a);
      auto vertex = [&](const std::string& n) {
        for (const auto& v : vertices)
          if (v.name() == n) return v;
        throw vl::VLError("unknown vertex '" + n + "'");
      };
      for (const auto& [a, s, t] : ex.arrows) ends.emplace_back(vertex(s), vertex(t));
      q.quiver = vl::make_quiver(vertices, make_carrier("Arrow", names), ends);
    } catch (const std::exception& err) {
      parse_fail(e, err.what());
    }
    q.source = std::move(ex);
    return q;
  }

  Declaration declaration(const SExpr& e) {
    const auto& h = head_of(e, "declaration").atom;
    if (h == "signature") return signature_decl(e);
    if (h == "theory") return theory_decl(e);
    if (h == "structure") return structure_decl(e);
    if (h == "context") return context_decl(e);
    if (h == "term") return term_decl(e);
    if (h == "formula") return formula_decl(e);
    if (h == "quiver") return quiver_decl(e);
    parse_fail(e[0], "unknown head '" + h + "'");
  }
};

void print_value_entries(std::ostream& os, const std::vector<Value>& args) {
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
  os << ')';
}

void print_signature(std::ostream& os, const Signature& sig) {
  os << "(signature " << sig.name << "\n  (types";
  for (const auto& b : sig.base_types) os << ' ' << b;
  os << ")\n  (fun";
  for (const auto& f : sig.fun_symbols) {
    os << " (" << f.name << " (";
    for (std::size_t i = 0; i < f.domain.size(); ++i) os << (i ? " " : "") << to_string(f.domain[i]);
    os << ") " << to_string(f.codomain) << ')';
  }
  os << ")\n  (rel";
  for (const auto& r : sig.rel_symbols) {
    os << " (" << r.name << " (";
    for (std::size_t i = 0; i < r.arity_types.size(); ++i) os << (i ? " " : "") << to_string(r.arity_types[i]);
    os << "))";
  }
  os << "))";
}

void print_structure(std::ostream& os, const Structure& st) {
  os << "(structure " << st.name << " of " << st.signature.name;
  for (const auto& b : st.signature.base_types) {
    auto it = st.carriers.find(b);
    if (it == st.carriers.end()) continue;
    os << "\n  (carrier " << b << " (";
    for (std::size_t i = 0; i < it->second.size(); ++i) os << (i ? " " : "") << it->second[i];
    os << "))";
  }
  for (const auto& f : st.signature.fun_symbols) {
    if (f.is_family()) {
      auto it = st.family_tables.find(f.name);
      if (it == st.family_tables.end()) continue;
      os << "\n  (family " << f.name;
      for (const auto& [args, fiber] : it->second) {
        os << "\n    (";
        print_value_entries(os, args);
        os << " (";
        for (std::size_t i = 0; i < fiber.size(); ++i) os << (i ? " " : "") << fiber[i];
        os << "))";
      }
      os << ')';
      continue;
    }
    auto it = st.fun_tables.find(f.name);
    if (it == st.fun_tables.end()) continue;
    os << "\n  (fun " << f.name;
    for (const auto& [args, v] : it->second) {
      os << "\n    (";
      print_value_entries(os, args);
      os << ' ' << v << ')';
    }
    os << ')';
  }
  for (const auto& r : st.signature.rel_symbols) {
    auto it = st.rel_tables.find(r.name);
    if (it == st.rel_tables.end()) continue;
    os << "\n  (rel " << r.name;
    for (const auto& tuple : it->second) {
      os << "\n    ";
      print_value_entries(os, tuple);
    }
    os << ')';
  }
  os << ')';
}

void print_header(std::ostream& os, const std::string& name, const std::optional<std::string>& sig,
                  const Context& ctx) {
  os << ' ' << name;
  if (sig) os << " over " << *sig;
  os << ' ' << to_string(ctx);
}

}  // namespace

SourceFile parse(std::string_view text, const Workspace& scope) {
  FileParser p{scope};
  SourceFile out;
  for (const auto& e : read_sexprs(text)) {
    auto d = p.declaration(e);
    p.ws.add(d, e.pos);
    out.declarations.push_back(std::move(d));
  }
  return out;
}

SourceFile parse(std::string_view text) { return parse(text, Workspace{}); }

std::string print(const Declaration& d) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Signature>) {
          print_signature(os, x);
        } else if constexpr (std::is_same_v<T, Theory>) {
          os << "(theory " << x.name << " over " << x.signature.name;
          for (const auto& ax : x.axioms)
            os << "\n  (axiom " << ax.name << ' ' << to_string(ax.context) << ' ' << to_string(ax.formula) << ')';
          os << ')';
        } else if constexpr (std::is_same_v<T, Structure>) {
          print_structure(os, x);
        } else if constexpr (std::is_same_v<T, ContextDecl>) {
          os << "(context " << x.name;
          for (const auto& e : x.context.entries) os << " (" << e.var << ' ' << to_string(e.type) << ')';
          os << ')';
        } else if constexpr (std::is_same_v<T, TermDecl>) {
          os << "(term";
          print_header(os, x.name, x.signature, x.context);
          os << ' ' << to_string(x.term) << ' ' << to_string(x.type) << ')';
        } else if constexpr (std::is_same_v<T, FormulaDecl>) {
          os << "(formula";
          print_header(os, x.name, x.signature, x.context);
          os << ' ' << to_string(x.formula) << ')';
        } else {
          os << "(quiver " << x.name;
          if (const auto* f = std::get_if<QuiverDecl::FromStructure>(&x.source)) {
            os << " (from " << f->structure << ')';
          } else if (const auto* w = std::get_if<QuiverDecl::Winding>(&x.source)) {
            os << " (winding " << w->modulus << ' ' << w->max_winding << ')';
          } else {
            const auto& ex = std::get<QuiverDecl::Explicit>(x.source);
            os << " (vertices";
            for (const auto& v : ex.vertices) os << ' ' << v;
            os << ')';
            for (const auto& [a, s, t] : ex.arrows) os << " (arrow " << a << ' ' << s << ' ' << t << ')';
          }
          os << ')';
        }
      },
      d);
  return os.str();
}

std::string print(const SourceFile& f) {
  std::string out;
  for (const auto& d : f.declarations) out += print(d) + "\n\n";
  return out;
}

// ---- workspace ----

namespace {

template <class T>
const T* find_in(const std::map<std::string, T>& table, const std::string& name) {
  auto it = table.find(name);
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace

void Workspace::add(const Declaration& d, SourcePos pos) {
  const std::string kind = kind_of(d);
  const auto& name = name_of(d);
  const bool exists = std::find(order_.begin(), order_.end(), std::pair{kind, name}) != order_.end();
  if (exists && !builtin_.count({kind, name})) throw ParseError(pos, "duplicate " + kind + " '" + name + "'");
  builtin_.erase({kind, name});
  if (!exists) order_.emplace_back(kind, name);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Signature>) {
          signatures_.insert_or_assign(name, x);
          last_signature_ = name;
        } else if constexpr (std::is_same_v<T, Theory>) {
          theories_.insert_or_assign(name, x);
        } else if constexpr (std::is_same_v<T, Structure>) {
          structures_.insert_or_assign(name, x);
        } else if constexpr (std::is_same_v<T, ContextDecl>) {
          contexts_.insert_or_assign(name, x);
        } else if constexpr (std::is_same_v<T, TermDecl>) {
          terms_.insert_or_assign(name, x);
        } else if constexpr (std::is_same_v<T, FormulaDecl>) {
          formulas_.insert_or_assign(name, x);
        } else {
          quivers_.insert_or_assign(name, x);
        }
      },
      d);
}

void Workspace::load(const SourceFile& f) {
  for (const auto& d : f.declarations) add(d);
}

const Signature* Workspace::signature(const std::string& n) const { return find_in(signatures_, n); }
const Theory* Workspace::theory(const std::string& n) const { return find_in(theories_, n); }
const Structure* Workspace::structure(const std::string& n) const { return find_in(structures_, n); }
const ContextDecl* Workspace::context(const std::string& n) const { return find_in(contexts_, n); }
const TermDecl* Workspace::term(const std::string& n) const { return find_in(terms_, n); }
const FormulaDecl* Workspace::formula(const std::string& n) const { return find_in(formulas_, n); }
const QuiverDecl* Workspace::quiver(const std::string& n) const { return find_in(quivers_, n); }

bool Workspace::is_builtin(const std::string& kind, const std::string& name) const {
  return builtin_.count({kind, name}) != 0;
}

Workspace Workspace::with_builtins() {
  Workspace ws;
  std::vector<Declaration> decls;
  auto structure = [&](Structure st) {
    const auto& sig = st.signature;
    if (!ws.signature(sig.name)) ws.add(sig);
    ws.add(std::move(st));
  };
  ws.add(music::make_group_theory().signature);
  ws.add(music::make_gis_theory().signature);
  ws.add(music::make_group_theory());
  ws.add(music::make_gis_theory());
  structure(music::cyclic_group(12));
  structure(music::cyclic_subtraction(12));
  structure(music::trivial_group());
  structure(music::gis_structure(12));
  structure(music::gis_structure(7));
  structure(music::pitch_class_structure(12));
  const auto lib = music::scale_library();
  structure(music::harmony_structure(lib));
  structure(music::domfunc_structure(music::DomfuncModel::HarmonicMinor));
  structure(music::domfunc_structure(music::DomfuncModel::Empty));
  structure(music::domfunc_structure(music::DomfuncModel::Adversarial));
  const auto ti = music::ti_group(12);
  structure(ti.group());
  const auto table = music::ti_vls_table(ti);
  structure(vl::to_structure(table, "ti-table"));
  ws.add(QuiverDecl{"ti-quiver", QuiverDecl::FromStructure{"ti-table"}, vl::vls_of_structure(table)});
  ws.add(QuiverDecl{"winding", QuiverDecl::Winding{12, 1}, vl::vls(ti.pitch, vl::WindingPaths{12, 1})});
  for (const auto& entry : ws.order_) ws.builtin_.insert(entry);
  ws.last_signature_.reset();
  return ws;
}

}  // namespace mulingua::dsl
