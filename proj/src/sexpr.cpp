#include "mulingua/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace mulingua {

namespace {

std::string with_pos(SourcePos pos, const std::string& what) {
  std::ostringstream os;
  os << "syntax error at " << pos.line << ':' << pos.column << ": " << what;
  return os.str();
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (i_ < text_.size()) {
      out.push_back(datum());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((static_cast<unsigned char>(text_[i_]) & 0xC0) != 0x80) {
      ++pos_.column;  // count code points, not UTF-8 continuation bytes
    }
    ++i_;
  }

  void skip() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr datum() {
    const SourcePos start = pos_;
    const char c = text_[i_];
    if (c == ')') throw ParseError(start, "unexpected ')'");
    if (c == '(') {
      advance();
      SExpr e;
      e.is_list = true;
      e.pos = start;
      skip();
      while (true) {
        if (i_ >= text_.size()) throw ParseError(start, "unclosed '('");
        if (text_[i_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(datum());
        skip();
      }
    }
    SExpr e;
    e.pos = start;
    while (i_ < text_.size()) {
      const char d = text_[i_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

void print(std::ostream& os, const SExpr& e) {
  if (!e.is_list) {
    os << e.atom;
    return;
  }
  os << '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) os << ' ';
    print(os, e.items[i]);
  }
  os << ')';
}

}  // namespace

ParseError::ParseError(SourcePos pos, const std::string& what) : std::runtime_error(with_pos(pos, what)), pos_(pos) {}

bool SExpr::has_head(std::string_view head) const { return is_list && !items.empty() && items[0].is_symbol(head); }

SExpr SExpr::symbol(std::string s) {
  SExpr e;
  e.atom = std::move(s);
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items) {
  SExpr e;
  e.is_list = true;
  e.items = std::move(items);
  return e;
}

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).all(); }

SExpr read_sexpr(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.empty()) throw ParseError({1, 1}, "expected a datum");
  if (all.size() > 1) throw ParseError(all[1].pos, "expected a single datum");
  return std::move(all.front());
}

std::string to_string(const SExpr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

void parse_fail(const SExpr& at, const std::string& what) { throw ParseError(at.pos, what); }

}  // namespace mulingua
