#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pretty/errors.hpp"
#include "pretty/formatters.hpp"

namespace pretty {

SExp SExp::make_atom(std::string s) {
  SExp e;
  e.atom = std::move(s);
  return e;
}

SExp SExp::make_list(std::vector<SExp> items) {
  SExp e;
  e.items = std::move(items);
  e.is_list = true;
  return e;
}

namespace {

class SExpParser {
 public:
  explicit SExpParser(std::string_view src) : src_(src) {}

  std::vector<SExp> all() {
    std::vector<SExp> out;
    skip_space();
    while (pos_ < src_.size()) {
      out.push_back(one());
      skip_space();
    }
    if (out.empty()) throw ParseError("empty input", line_, col_);
    return out;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) advance();
  }

  SExp one() {
    const char ch = src_[pos_];
    if (ch == ')') throw ParseError("unbalanced ')'", line_, col_);
    if (ch != '(') return atom();
    const std::size_t line = line_;
    const std::size_t col = col_;
    advance();
    std::vector<SExp> items;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) throw ParseError("unclosed '('", line, col);
      if (src_[pos_] == ')') {
        advance();
        return SExp::make_list(std::move(items));
      }
      items.push_back(one());
    }
  }

  SExp atom() {
    std::string s;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '(' && src_[pos_] != ')') {
      if (src_[pos_] == '"') {
        string_into(s);
      } else {
        s += src_[pos_];
        advance();
      }
    }
    return SExp::make_atom(std::move(s));
  }

  void string_into(std::string& s) {
    const std::size_t line = line_;
    const std::size_t col = col_;
    s += '"';
    advance();
    while (true) {
      if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
      const char ch = src_[pos_];
      if (ch == '\n') throw ParseError("newline inside a string atom", line_, col_);
      s += ch;
      advance();
      if (ch == '"') return;
      if (ch == '\\') {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
        if (src_[pos_] == '\n') throw ParseError("newline inside a string atom", line_, col_);
        s += src_[pos_];
        advance();
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

Doc build(const SExp& e, const StyleConfig& style) {
  if (!e.is_list) return text(e.atom);
  if (e.items.empty()) return text("()");
  std::vector<Doc> items;
  items.reserve(e.items.size());
  for (const SExp& x : e.items) items.push_back(build(x, style));
  if (items.size() == 1) return concat(concat(text("("), items.front()), text(")"));

  Doc horizontal = items.front();
  Doc vertical = items.front();
  for (std::size_t k = 1; k < items.size(); ++k) {
    horizontal = acat(concat(horizontal, text(" ")), items[k]);
    vertical = vcat(vertical, items[k]);
  }
  Doc body = style.horizontal && style.vertical ? alt(horizontal, vertical)
             : style.horizontal                 ? horizontal
                                                : vertical;
  return concat(concat(text("("), align(body)), text(")"));
}

}  // namespace

std::vector<SExp> parse_sexps(std::string_view source) { return SExpParser(source).all(); }

Doc sexp_to_doc(const SExp& e, const StyleConfig& style) {
  if (!style.horizontal && !style.vertical) throw std::invalid_argument("no S-expression style enabled");
  return build(e, style);
}

Doc sexp_to_doc(std::string_view source, const StyleConfig& style) {
  const std::vector<SExp> forms = parse_sexps(source);
  Doc out = sexp_to_doc(forms.front(), style);
  for (std::size_t k = 1; k < forms.size(); ++k) out = vcat(out, sexp_to_doc(forms[k], style));
  return out;
}

}  // namespace pretty
