#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pretty/doc.hpp"

namespace pretty {

struct StyleConfig {
  std::size_t indent_width = 2;
  // S-expression list styles offered as alternatives; at least one is needed.
  bool horizontal = true;
  bool vertical = true;
};

// Document IR: S-expression forms
//   (text "s") (nl) (newline "s") (hardnl) (fail)
//   (concat D D) (nest N D) (align D) (reset D) (alt D D)
//   (group D) (vcat D D) (acat D D) (flatten D)
//   (let X D B) (ref X)
// `let` builds D once; every (ref X) in B denotes that same node.
// Strings take the escapes \" \\ \t and \n (the last is rejected in text).

/// Throws ParseError on malformed input, unbound references and newlines in
/// text.
Doc parse_doc_ir(std::string_view source);

/// Serializes `d` back to the IR. Nodes reachable along several paths are
/// bound once with `let` (named n0, n1, ...). Throws std::invalid_argument on
/// with_cost nodes, which the IR cannot express.
std::string to_doc_ir(const Doc& d);

/// Each object and array becomes group(open <> nest(indent, break <> members)
/// <> break <> close), where members are comma-terminated and separated by
/// nl, and break is a newline that flattens to nothing. Scalars are text in
/// their canonical JSON spelling; member order is preserved.
/// Throws ParseError on invalid JSON.
Doc json_to_doc(std::string_view json, const StyleConfig& style = {});

/// Canonical one-line spelling of `json`: ", " between items, ": " after keys.
std::string json_one_line(std::string_view json);

struct SExp {
  std::string atom;
  std::vector<SExp> items;
  bool is_list = false;

  static SExp make_atom(std::string s);
  static SExp make_list(std::vector<SExp> items);
};

/// Parses whitespace-separated S-expressions. Atoms are maximal runs of
/// characters other than whitespace and parentheses; "..." strings (with
/// backslash escapes) are kept verbatim as atoms. Throws ParseError.
std::vector<SExp> parse_sexps(std::string_view source);

/// A list (e1 ... en) becomes "(" <> choice <> ")", choosing between e1..en
/// separated by spaces and align(e1 <$> ... <$> en). Element documents are
/// shared by both styles. Atoms are text; top-level forms are joined by <$>.
Doc sexp_to_doc(const SExp& e, const StyleConfig& style = {});
Doc sexp_to_doc(std::string_view source, const StyleConfig& style = {});

}  // namespace pretty
