#pragma once

#include <cstddef>
#include <memory>
#include <string_view>

#include "pretty/layout.hpp"

namespace pretty {

/// Rendered output as a rope of tokens, used as the measure payload in fused
/// mode. Newline tokens carry the indentation that was current when they were
/// resolved, so no layout computation is left for the end.
///
/// Text tokens view the content of document nodes; the document must outlive
/// the rope.
struct Token {
  enum class Kind : unsigned char { text, newline, seq };

  Kind kind = Kind::text;
  std::string_view text;
  std::size_t indent = 0;
  std::shared_ptr<Token> left;
  std::shared_ptr<Token> right;

  Token() = default;
  Token(const Token&) = delete;
  Token& operator=(const Token&) = delete;
  ~Token();
};

using TokenPtr = std::shared_ptr<Token>;

TokenPtr token_text(std::string_view s);
TokenPtr token_newline(std::size_t indent);
TokenPtr token_seq(TokenPtr a, TokenPtr b);

/// Writes the rope out in order. Iterative, so ropes of any depth are fine.
Layout render_tokens(const TokenPtr& rope);

}  // namespace pretty
