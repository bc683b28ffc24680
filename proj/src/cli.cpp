#include "mulingua/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mulingua/dsl.hpp"
#include "mulingua/logic.hpp"
#include "mulingua/musiclib.hpp"
#include "mulingua/proofs.hpp"
#include "mulingua/voiceleading.hpp"

namespace mulingua::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  std::size_t used = 0;
  try {
    n = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') throw Usage(what + " must be a natural number, got '" + text + "'");
  return n;
}

SExpr read_argument(const std::string& text) {
  try {
    return read_sexpr(text);
  } catch (const ParseError& e) {
    throw Usage(std::string("argument '") + text + "': " + e.what());
  }
}

class Driver {
 public:
  Driver(dsl::Workspace ws, EvalOptions opts, std::ostream& out, std::ostream& err)
      : ws_(std::move(ws)), opts_(opts), out_(out), err_(err) {}

  int check(bool only_loaded);
  int model_check(const std::string& theory, const std::string& structure);
  int eval(const std::string& structure, const std::string& formula, const std::string& ctx);
  int prove(const std::string& structure, const std::string& type);
  int vls(const std::string& structure, const std::string& rule);
  int autos(const std::string& quiver, std::size_t budget);
  int dot(const std::string& quiver);
  int export_decl(const std::string& name);

 private:
  const Structure& structure(const std::string& name) const {
    if (const auto* s = ws_.structure(name)) return *s;
    throw Usage("unknown structure '" + name + "'");
  }
  const dsl::QuiverDecl& quiver(const std::string& name) const {
    if (const auto* q = ws_.quiver(name)) return *q;
    throw Usage("unknown quiver '" + name + "'");
  }
  Verdict check_declaration(const std::string& kind, const std::string& name, const std::string& scope_sig) const;

  dsl::Workspace ws_;
  EvalOptions opts_;
  std::ostream& out_;
  std::ostream& err_;
};

Verdict Driver::check_declaration(const std::string& kind, const std::string& name,
                                  const std::string& scope_sig) const {
  auto sig_of = [&](const std::optional<std::string>& s) -> const Signature* {
    return s ? ws_.signature(*s) : nullptr;
  };
  if (kind == "signature") return validate_signature(*ws_.signature(name));
  if (kind == "theory") return validate_theory(*ws_.theory(name));
  if (kind == "structure") return validate_structure(*ws_.structure(name), opts_);
  if (kind == "context") {
    const auto* sig = ws_.signature(scope_sig);
    if (!sig) return Verdict::failure("no signature in scope");
    return well_formed_context(*sig, ws_.context(name)->context);
  }
  if (kind == "term") {
    const auto& d = *ws_.term(name);
    const auto* sig = sig_of(d.signature);
    if (!sig) return Verdict::failure("no signature in scope");
    if (auto v = well_formed_context(*sig, d.context); !v) return v;
    if (auto v = well_formed_type(*sig, d.context, d.type); !v) return v;
    return check_term(*sig, d.context, d.term, d.type);
  }
  if (kind == "formula") {
    const auto& d = *ws_.formula(name);
    const auto* sig = sig_of(d.signature);
    if (!sig) return Verdict::failure("no signature in scope");
    if (auto v = well_formed_context(*sig, d.context); !v) return v;
    return well_formed_formula(*sig, d.context, d.formula);
  }
  return Verdict::success();  // quivers are resolved at parse time
}

int Driver::check(bool only_loaded) {
  std::size_t total = 0, ok = 0;
  std::string scope_sig;
  for (const auto& [kind, name] : ws_.order()) {
    if (kind == "signature") scope_sig = name;
    if (only_loaded && ws_.is_builtin(kind, name)) continue;
    ++total;
    const auto v = check_declaration(kind, name, scope_sig);
    out_ << kind << ' ' << name << ": ";
    if (v) {
      ++ok;
      out_ << "ok\n";
    } else {
      out_ << "FAIL " << v.message << '\n';
    }
  }
  out_ << total << " declarations, " << ok << " ok\n";
  return ok == total ? Success : Refuted;
}

int Driver::model_check(const std::string& theory_name, const std::string& structure_name) {
  const auto* th = ws_.theory(theory_name);
  if (!th) throw Usage("unknown theory '" + theory_name + "'");
  const auto& st = structure(structure_name);
  if (th->signature.name != st.signature.name)
    throw Usage("theory '" + th->name + "' is over " + th->signature.name + " but structure '" + st.name + "' is of " +
                st.signature.name);
  if (auto v = validate_theory(*th); !v) {
    out_ << "theory " << th->name << " is ill-formed: " << v.message << '\n';
    return Refuted;
  }
  if (auto v = validate_structure(st, opts_); !v) {
    out_ << "structure " << st.name << " is not a model of " << st.signature.name << ": " << v.message << '\n';
    return Refuted;
  }
  const auto report = check_theory(st, *th, opts_);
  out_ << report.to_text();
  return report.all_pass() ? Success : Refuted;
}

int Driver::eval(const std::string& structure_name, const std::string& formula_text, const std::string& ctx_text) {
  const auto& st = structure(structure_name);
  Context ctx;
  Formula f = Formula::top();
  const bool inline_formula = formula_text.empty() || formula_text.front() == '(' || formula_text == "true" ||
                              formula_text == "false";
  if (inline_formula) {
    try {
      if (!ctx_text.empty()) ctx = dsl::read_context(read_argument(ctx_text));
      f = dsl::read_formula(read_argument(formula_text));
    } catch (const ParseError& e) {
      throw Usage(e.what());
    }
  } else {
    const auto* d = ws_.formula(formula_text);
    if (!d) throw Usage("unknown formula '" + formula_text + "'");
    if (!ctx_text.empty()) throw Usage("--ctx applies to inline formulas only");
    ctx = d->context;
    f = d->formula;
  }
  if (auto v = well_formed_context(st.signature, ctx); !v) throw Usage(v.message);
  if (auto v = well_formed_formula(st.signature, ctx, f); !v) throw Usage(v.message);
  const auto cex = find_counterexample(st, ctx, f, opts_);
  if (!cex) {
    out_ << "⊤\n";
    return Success;
  }
  out_ << "⊥";
  if (!cex->empty()) out_ << " counterexample " << to_string(*cex);
  out_ << '\n';
  return Refuted;
}

int Driver::prove(const std::string& structure_name, const std::string& type_text) {
  const auto& st = structure(structure_name);
  TypeExpr t = TypeExpr::unit();
  auto element = [&](const std::string& type, const SExpr& e) {
    if (!e.is_atom()) throw Usage("expected an element of " + type + ", got " + to_string(e));
    auto v = st.element(type, e.atom);
    if (!v) throw Usage("structure '" + st.name + "' has no element '" + e.atom + "' of " + type);
    return *v;
  };
  if (const auto* d = type_text.empty() || type_text.front() == '(' ? nullptr : ws_.formula(type_text)) {
    t = proofs::to_type(d->formula);
    for (auto it = d->context.entries.rbegin(); it != d->context.entries.rend(); ++it)
      t = TypeExpr::pi(it->var, it->type, t);
  } else {
    const auto e = read_argument(type_text);
    try {
      if (e.has_head("allInterval")) {
        std::vector<Value> chord;
        for (std::size_t i = 1; i < e.size(); ++i) chord.push_back(element("PC", e[i]));
        t = proofs::all_interval_type(st, chord);
      } else if (e.has_head("domfunc")) {
        if (e.size() != 2) throw Usage("expected (domfunc KEY)");
        t = proofs::domfunc_leading_tone_type(st, element("Key", e[1]));
      } else {
        t = dsl::read_type(e);
      }
    } catch (const ParseError& err) {
      throw Usage(err.what());
    }
  }
  if (auto v = well_formed_type(st.signature, {}, t); !v) throw Usage(v.message);
  const auto r = proofs::inhabit(st, t, {}, opts_);
  if (r) {
    out_ << "inhabited\nproof: " << proofs::render(r.proof->value) << '\n';
    return Success;
  }
  out_ << "uninhabited: " << r.reason << '\n';
  if (r.failing_index) out_ << "first failing fiber: " << *r.failing_index << '\n';
  return Refuted;
}

int Driver::vls(const std::string& structure_name, const std::string& rule_text) {
  const auto& st = structure(structure_name);
  vl::Quiver q;
  if (rule_text == "vlr") {
    q = vl::vls_of_structure(vl::from_structure(st));
  } else {
    const FinSet* pitch = nullptr;
    for (const char* name : {"Pitch", "PC"})
      if (auto it = st.carriers.find(name); it != st.carriers.end() && !pitch) pitch = &it->second;
    if (!pitch) throw Usage("structure '" + st.name + "' has no Pitch or PC carrier");
    const auto n = pitch->size();
    if (rule_text == "ti") {
      q = vl::vls(*pitch, music::ti_group(n).action);
    } else {
      const auto e = read_argument(rule_text);
      if (!e.has_head("winding") || e.size() != 2 || !e[1].is_atom())
        throw Usage("RULE must be ti, vlr or (winding W), got " + rule_text);
      q = vl::vls(*pitch, vl::WindingPaths{n, parse_count(e[1].atom, "winding bound")});
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> fibers;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) ++fibers[{q.src[a], q.tgt[a]}];
  const auto pairs = q.vertices.size() * q.vertices.size();
  std::size_t lo = fibers.size() < pairs ? 0 : q.arrows.size(), hi = 0;
  for (const auto& [k, c] : fibers) lo = std::min(lo, c), hi = std::max(hi, c);
  out_ << "vertices " << q.vertices.size() << "\narrows " << q.arrows.size() << "\nnonempty pairs " << fibers.size()
       << " of " << pairs << "\nfiber size min " << lo << " max " << hi << '\n';
  return Success;
}

int Driver::autos(const std::string& quiver_name, std::size_t budget) {
  const auto& q = quiver(quiver_name).quiver;
  const auto homs = vl::enumerate_automorphisms(q, budget);
  out_ << homs.size() << " automorphisms\n";
  for (std::size_t k = 0; k < homs.size(); ++k) {
    out_ << k << ": vertices";
    for (auto i : homs[k].gamma0) out_ << ' ' << q.vertices[i];
    out_ << " | arrows";
    for (auto i : homs[k].gamma1) out_ << ' ' << q.arrows[i];
    out_ << '\n';
  }
  return Success;
}

int Driver::dot(const std::string& quiver_name) {
  out_ << vl::to_dot(quiver(quiver_name).quiver, quiver_name);
  return Success;
}

int Driver::export_decl(const std::string& name) {
  std::vector<dsl::Declaration> found;
  if (const auto* d = ws_.signature(name)) found.emplace_back(*d);
  if (const auto* d = ws_.theory(name)) found.emplace_back(*d);
  if (const auto* d = ws_.structure(name)) found.emplace_back(*d);
  if (const auto* d = ws_.context(name)) found.emplace_back(*d);
  if (const auto* d = ws_.term(name)) found.emplace_back(*d);
  if (const auto* d = ws_.formula(name)) found.emplace_back(*d);
  if (const auto* d = ws_.quiver(name)) found.emplace_back(*d);
  if (found.empty()) throw Usage("nothing named '" + name + "'");
  for (const auto& d : found) out_ << dsl::print(d) << '\n';
  return Success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite model checking and proof search for typed theories of pitch, harmony and rhythm", "mulingua"};
  app.require_subcommand(1);
  std::vector<std::string> files;
  app.add_option("-f,--file", files, "Load declarations from a .mul file (repeatable)");

  std::string a1, a2, ctx_text;
  std::optional<std::size_t> budget;
  bool loaded_only = false;

  auto* check = app.add_subcommand("check", "Kernel and logic well-formedness of every declaration");
  check->add_flag("--loaded", loaded_only, "Skip builtin declarations");
  auto* model_check = app.add_subcommand("model-check", "Check every axiom of THEORY in STRUCTURE");
  model_check->add_option("THEORY", a1)->required();
  model_check->add_option("STRUCTURE", a2)->required();
  auto* eval = app.add_subcommand("eval", "Evaluate FORMULA (a name or an S-expression) in STRUCTURE");
  eval->add_option("STRUCTURE", a1)->required();
  eval->add_option("FORMULA", a2)->required();
  eval->add_option("--ctx", ctx_text, "Context (ctx (x A) ...) quantified universally over an inline formula");
  auto* prove = app.add_subcommand("prove", "Search for an inhabitant of TYPE in STRUCTURE");
  prove->add_option("STRUCTURE", a1)->required();
  prove->add_option("TYPE", a2, "A type, a formula name, (allInterval pc ...) or (domfunc KEY)")->required();
  auto* vls = app.add_subcommand("vls", "Voice-leading space of STRUCTURE under RULE (ti, vlr or (winding W))");
  vls->add_option("STRUCTURE", a1)->required();
  vls->add_option("RULE", a2)->required();
  auto* autos = app.add_subcommand("autos", "Enumerate the automorphisms of QUIVER");
  autos->add_option("QUIVER", a1)->required();
  autos->add_option("--budget", budget, "Refuse when |V|! exceeds this; defaults to the element budget");
  auto* dot = app.add_subcommand("dot", "Graphviz rendering of QUIVER");
  dot->add_option("QUIVER", a1)->required();
  auto* exp = app.add_subcommand("export", "Print the declarations named NAME in source syntax");
  exp->add_option("NAME", a1)->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> storage{"mulingua"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Success : UsageError;
  }

  try {
    EvalOptions opts;
    if (const char* env = std::getenv("MULINGUA_BUDGET")) opts.element_budget = parse_count(env, "MULINGUA_BUDGET");
    auto ws = dsl::Workspace::with_builtins();
    for (const auto& path : files) {
      try {
        ws.load(dsl::parse(read_file(path), ws));
      } catch (const ParseError& e) {
        err << path << ": " << e.what() << '\n';
        return UsageError;
      }
    }
    Driver d(std::move(ws), opts, out, err);
    if (*check) return d.check(loaded_only);
    if (*model_check) return d.model_check(a1, a2);
    if (*eval) return d.eval(a1, a2, ctx_text);
    if (*prove) return d.prove(a1, a2);
    if (*vls) return d.vls(a1, a2);
    if (*autos) return d.autos(a1, budget.value_or(opts.element_budget));
    if (*dot) return d.dot(a1);
    return d.export_decl(a1);
  } catch (const BudgetExceeded& e) {
    err << "mulingua: budget exceeded: " << e.what() << '\n';
  } catch (const Usage& e) {
    err << "mulingua: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "mulingua: error: " << e.what() << '\n';
  }
  return UsageError;
}

}  // namespace mulingua::cli
