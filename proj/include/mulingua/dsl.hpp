#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mulingua/semantics.hpp"
#include "mulingua/sexpr.hpp"
#include "mulingua/voiceleading.hpp"

namespace mulingua::dsl {

// ---- syntax of the three sorts; inverse to the to_string printers ----

TypeExpr read_type(const SExpr& e);
Term read_term(const SExpr& e);
Formula read_formula(const SExpr& e);
/// (ctx (x A) ...)
Context read_context(const SExpr& e);

/// Type-guided reading of a value of `t` in `st`: atoms by name, *, true/false, (pair a b),
/// (inl v), (inr v), (set e ...), (table (k v) ...), (section (k v) ...); anything else is
/// matched against the printed elements of the interpreted type.
Value read_value(const Structure& st, const TypeExpr& t, const SExpr& e, const Environment& env = {});

// ---- declarations ----

struct ContextDecl {
  std::string name;
  Context context;
};

struct TermDecl {
  std::string name;
  std::optional<std::string> signature;  // defaults to the last signature declared before it
  Context context;
  Term term;
  TypeExpr type;
};

struct FormulaDecl {
  std::string name;
  std::optional<std::string> signature;  // defaults to the last signature declared before it
  Context context;
  Formula formula;
};

/// (quiver NAME (vertices v ...) (arrow a s t) ...) | (quiver NAME (from STRUCTURE)) | (quiver NAME (winding N W))
struct QuiverDecl {
  struct Explicit {
    std::vector<std::string> vertices;
    std::vector<std::array<std::string, 3>> arrows;  // name, source, target
  };
  struct FromStructure {
    std::string structure;
  };
  struct Winding {
    std::size_t modulus;
    std::size_t max_winding;
  };
  std::string name;
  std::variant<Explicit, FromStructure, Winding> source;
  vl::Quiver quiver;  // resolved
};

using Declaration = std::variant<Signature, Theory, Structure, ContextDecl, TermDecl, FormulaDecl, QuiverDecl>;

const std::string& name_of(const Declaration& d);
/// "signature", "theory", ...
const char* kind_of(const Declaration& d);

struct SourceFile {
  std::vector<Declaration> declarations;
};

class Workspace;

/// Parses and resolves declarations in order; names resolve against earlier declarations of the
/// same text, then `scope`. Throws ParseError (with line:column) on syntax errors, unknown heads,
/// unresolved names and duplicate names.
SourceFile parse(std::string_view text, const Workspace& scope);
SourceFile parse(std::string_view text);

std::string print(const Declaration& d);
std::string print(const SourceFile& f);

/// Named signatures, theories, structures, contexts, terms, formulas and quivers. Builtin
/// entries may be redefined by loaded files; loaded entries may not be redefined.
class Workspace {
 public:
  static Workspace with_builtins();

  /// Throws ParseError on a duplicate of an earlier loaded name.
  void add(const Declaration& d, SourcePos pos = {});
  void load(const SourceFile& f);

  const Signature* signature(const std::string& name) const;
  const Theory* theory(const std::string& name) const;
  const Structure* structure(const std::string& name) const;
  const ContextDecl* context(const std::string& name) const;
  const TermDecl* term(const std::string& name) const;
  const FormulaDecl* formula(const std::string& name) const;
  const QuiverDecl* quiver(const std::string& name) const;
  const std::string* last_signature() const { return last_signature_ ? &*last_signature_ : nullptr; }

  /// Declarations in load order (builtins first).
  const std::vector<std::pair<std::string, std::string>>& order() const { return order_; }
  bool is_builtin(const std::string& kind, const std::string& name) const;

 private:
  template <class T>
  using Table = std::map<std::string, T>;
  Table<Signature> signatures_;
  Table<Theory> theories_;
  Table<Structure> structures_;
  Table<ContextDecl> contexts_;
  Table<TermDecl> terms_;
  Table<FormulaDecl> formulas_;
  Table<QuiverDecl> quivers_;
  std::set<std::pair<std::string, std::string>> builtin_;
  std::vector<std::pair<std::string, std::string>> order_;  // (kind, name)
  std::optional<std::string> last_signature_;
};

}  // namespace mulingua::dsl
