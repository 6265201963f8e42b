#include "pretty/tokens.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pretty {

Token::~Token() {
  std::vector<TokenPtr> pending;
  auto take = [&pending](TokenPtr& p) {
    if (p && p.use_count() == 1) pending.push_back(std::move(p));
  };
  take(left);
  take(right);
  while (!pending.empty()) {
    TokenPtr t = std::move(pending.back());
    pending.pop_back();
    take(t->left);
    take(t->right);
  }
}

TokenPtr token_text(std::string_view s) {
  auto t = std::make_shared<Token>();
  t->text = s;
  return t;
}

TokenPtr token_newline(std::size_t indent) {
  auto t = std::make_shared<Token>();
  t->kind = Token::Kind::newline;
  t->indent = indent;
  return t;
}

TokenPtr token_seq(TokenPtr a, TokenPtr b) {
  auto t = std::make_shared<Token>();
  t->kind = Token::Kind::seq;
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}

Layout render_tokens(const TokenPtr& rope) {
  Layout out;
  std::vector<const Token*> stack{rope.get()};
  while (!stack.empty()) {
    const Token* t = stack.back();
    stack.pop_back();
    switch (t->kind) {
      case Token::Kind::text:
        out.lines.back().append(t->text);
        break;
      case Token::Kind::newline:
        out.lines.emplace_back(t->indent, ' ');
        out.indents.push_back(t->indent);
        break;
      case Token::Kind::seq:
        stack.push_back(t->right.get());
        stack.push_back(t->left.get());
        break;
    }
  }
  return out;
}

}  // namespace pretty
