#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mulingua {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Parse failure carrying the 1-based position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Symbol atom or parenthesized list. Comments run from ';' to end of line.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourcePos pos;

  bool is_atom() const { return !is_list; }
  bool is_symbol(std::string_view s) const { return !is_list && atom == s; }
  /// True for a list whose first item is the symbol `head`.
  bool has_head(std::string_view head) const;
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }

  static SExpr symbol(std::string s);
  static SExpr list(std::vector<SExpr> items);
};

std::vector<SExpr> read_sexprs(std::string_view text);
/// Exactly one datum.
SExpr read_sexpr(std::string_view text);

std::string to_string(const SExpr& e);

/// Throws ParseError at `at` with `what`.
[[noreturn]] void parse_fail(const SExpr& at, const std::string& what);

}  // namespace mulingua
