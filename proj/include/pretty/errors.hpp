#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pretty {

/// Malformed frontend input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The document evaluates to no layout at all (every choice fails).
class NoLayoutError : public std::runtime_error {
 public:
  NoLayoutError() : std::runtime_error("document has no layout: every alternative fails") {}
};

}  // namespace pretty
