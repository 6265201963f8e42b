#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pretty {

/// The textual result of rendering: a non-empty list of newline-free lines.
///
/// `indents[k]` is the indentation level that produced the leading spaces of
/// line k (the first line has no indentation of its own and records 0). It is
/// what factories whose newline cost depends on indentation are charged with.
struct Layout {
  std::vector<std::string> lines{std::string()};
  std::vector<std::size_t> indents{0};

  /// Builds a layout from plain lines, reading each line's leading spaces as
  /// its indentation.
  static Layout from_lines(std::vector<std::string> lines);

  std::size_t height() const noexcept { return lines.size(); }
  /// Lines joined with '\n', without a trailing newline.
  std::string str() const;

  /// Layouts are equal when their text is; indents are bookkeeping.
  friend bool operator==(const Layout& a, const Layout& b) { return a.lines == b.lines; }
};

}  // namespace pretty
