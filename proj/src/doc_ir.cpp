#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pretty/errors.hpp"
#include "pretty/formatters.hpp"

namespace pretty {

namespace {

struct Lexeme {
  enum Kind { lparen, rparen, string, atom, end } kind;
  std::string value;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Lexeme next() {
    skip_space();
    const std::size_t line = line_;
    const std::size_t col = col_;
    if (pos_ >= src_.size()) return {Lexeme::end, "", line, col};
    const char ch = src_[pos_];
    if (ch == '(') {
      advance();
      return {Lexeme::lparen, "(", line, col};
    }
    if (ch == ')') {
      advance();
      return {Lexeme::rparen, ")", line, col};
    }
    if (ch == '"') return {Lexeme::string, read_string(line, col), line, col};
    std::string value;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '(' && src_[pos_] != ')' &&
           src_[pos_] != '"' && src_[pos_] != ';') {
      value += src_[pos_];
      advance();
    }
    return {Lexeme::atom, std::move(value), line, col};
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
    while (pos_ < src_.size()) {
      if (is_space(src_[pos_])) {
        advance();
      } else if (src_[pos_] == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string read_string(std::size_t line, std::size_t col) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
      const char ch = src_[pos_];
      if (ch == '"') {
        advance();
        return out;
      }
      if (ch == '\\') {
        advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
        switch (src_[pos_]) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: throw ParseError(std::string("unknown escape \\") + src_[pos_], line_, col_);
        }
        advance();
        continue;
      }
      out += ch;
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  Doc parse_all() {
    Doc d = expr();
    if (tok_.kind != Lexeme::end) fail_here("unexpected input after the document");
    return d;
  }

 private:
  [[noreturn]] void fail_at(const Lexeme& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }
  [[noreturn]] void fail_here(const std::string& msg) { fail_at(tok_, msg); }

  void shift() { tok_ = lex_.next(); }

  void expect(Lexeme::Kind kind, const char* what) {
    if (tok_.kind != kind) fail_here(std::string("expected ") + what);
    shift();
  }

  std::string string_arg() {
    if (tok_.kind != Lexeme::string) fail_here("expected a string literal");
    std::string s = std::move(tok_.value);
    shift();
    return s;
  }

  Doc text_arg() {
    const Lexeme at = tok_;
    std::string s = string_arg();
    if (s.find('\n') != std::string::npos) fail_at(at, "text must not contain a newline");
    return text(s);
  }

  std::string name_arg() {
    if (tok_.kind != Lexeme::atom) fail_here("expected a name");
    std::string s = std::move(tok_.value);
    shift();
    return s;
  }

  std::size_t natural_arg() {
    if (tok_.kind != Lexeme::atom) fail_here("expected a natural number");
    std::size_t n = 0;
    const std::string& v = tok_.value;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || p != v.data() + v.size()) fail_here("expected a natural number");
    shift();
    return n;
  }

  Doc expr() {
    if (tok_.kind != Lexeme::lparen) fail_here("expected '('");
    shift();
    const Lexeme head = tok_;
    if (head.kind != Lexeme::atom) fail_here("expected a form name");
    shift();
    const std::string& op = head.value;
    Doc out = [&]() -> Doc {
      if (op == "text") return text_arg();
      if (op == "nl") return nl();
      if (op == "newline") {
        const Lexeme at = tok_;
        std::string s = string_arg();
        if (s.find('\n') != std::string::npos) fail_at(at, "newline alternative must not contain a newline");
        return newline(std::move(s));
      }
      if (op == "hardnl") return hard_nl();
      if (op == "fail") return fail();
      if (op == "concat" || op == "alt" || op == "vcat" || op == "acat") {
        Doc a = expr();
        Doc b = expr();
        if (op == "concat") return concat(a, b);
        if (op == "alt") return alt(a, b);
        if (op == "vcat") return vcat(a, b);
        return acat(a, b);
      }
      if (op == "nest") {
        const std::size_t n = natural_arg();
        return nest(n, expr());
      }
      if (op == "align") return align(expr());
      if (op == "reset") return reset(expr());
      if (op == "group") return group(expr());
      if (op == "flatten") return flatten(expr());
      if (op == "let") {
        std::string name = name_arg();
        Doc bound = expr();
        scope_.emplace_back(std::move(name), bound);
        Doc body = expr();
        scope_.pop_back();
        return body;
      }
      if (op == "ref") {
        const Lexeme at = tok_;
        std::string name = name_arg();
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == name) return it->second;
        }
        fail_at(at, "unbound reference '" + name + "'");
      }
      fail_at(head, "unknown form '" + op + "'");
    }();
    expect(Lexeme::rparen, "')'");
    return out;
  }

  Lexer lex_;
  Lexeme tok_{Lexeme::end, "", 1, 1};
  std::vector<std::pair<std::string, Doc>> scope_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\t') {
      out += "\\t";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

class Writer {
 public:
  std::string run(const Doc& root) {
    count_parents(root);
    std::string body = emit(root, true);
    std::string out;
    for (const auto& [name, def] : lets_) out += "(let " + name + " " + def + " ";
    out += body;
    out.append(lets_.size(), ')');
    return out;
  }

 private:
  void count_parents(const Doc& root) {
    std::vector<const detail::DocNode*> stack{root.node()};
    while (!stack.empty()) {
      const detail::DocNode* n = stack.back();
      stack.pop_back();
      if (parents_[n->id]++ > 0) continue;
      if (n->left) stack.push_back(n->left.get());
      if (n->right) stack.push_back(n->right.get());
    }
  }

  // Shared nodes become lets, emitted children first so refs precede use.
  std::string emit(const Doc& d, bool is_root = false) {
    if (!is_root && parents_[d.id()] > 1) {
      if (auto it = names_.find(d.id()); it != names_.end()) return "(ref " + it->second + ")";
      std::string def = form(d);
      std::string name = "n" + std::to_string(lets_.size());
      lets_.emplace_back(name, std::move(def));
      names_.emplace(d.id(), name);
      return "(ref " + name + ")";
    }
    return form(d);
  }

  std::string form(const Doc& d) {
    switch (d.kind()) {
      case DocKind::text:
        return "(text " + quote(d.content()) + ")";
      case DocKind::newline:
        if (!d.has_flat_alternative()) return "(hardnl)";
        if (d.content() == " ") return "(nl)";
        return "(newline " + quote(d.content()) + ")";
      case DocKind::fail:
        return "(fail)";
      case DocKind::concat:
        return "(concat " + emit(d.left()) + " " + emit(d.right()) + ")";
      case DocKind::alt:
        return "(alt " + emit(d.left()) + " " + emit(d.right()) + ")";
      case DocKind::nest:
        return "(nest " + std::to_string(d.amount()) + " " + emit(d.inner()) + ")";
      case DocKind::align:
        return "(align " + emit(d.inner()) + ")";
      case DocKind::reset:
        return "(reset " + emit(d.inner()) + ")";
      case DocKind::with_cost:
        break;
    }
    throw std::invalid_argument("with_cost has no document IR form");
  }

  std::unordered_map<std::uint64_t, std::size_t> parents_;
  std::unordered_map<std::uint64_t, std::string> names_;
  std::vector<std::pair<std::string, std::string>> lets_;
};

}  // namespace

Doc parse_doc_ir(std::string_view source) { return Parser(source).parse_all(); }

std::string to_doc_ir(const Doc& d) { return Writer().run(d); }

}  // namespace pretty
