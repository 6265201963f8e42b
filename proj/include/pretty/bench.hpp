#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pretty/doc.hpp"
#include "pretty/layout.hpp"

namespace pretty {

enum class BenchFamily { concat, fillsep, flatten, sexpfull, randfit, randover, json };

std::optional<BenchFamily> parse_bench_family(std::string_view name);
std::string bench_family_name(BenchFamily f);

struct BenchSpec {
  BenchFamily family = BenchFamily::concat;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::size_t page_width = 80;
  std::size_t computation_width = 100;
  bool fused = false;
  std::size_t repeats = 3;
};

/// Builds the benchmark document. Deterministic in (family, size, seed,
/// page_width). Throws std::invalid_argument when the size is zero or too
/// large for the family, and std::runtime_error when a filtered random family
/// finds no qualifying tree. Recursive; call on a deep stack for big sizes.
///
///   concat    left-nested chain of `size` one-character texts
///   fillsep   fill_sep over `size` random words of 1 to 8 letters
///   flatten   Q(size), Q(0) = "line", Q(k) = group(Q(k-1) <$> "line")
///   sexpfull  complete binary tree of depth `size` through sexp_to_doc
///   randfit   random tree of `size` nodes whose all-vertical layout fits
///   randover  random tree of `size` nodes whose all-vertical layout does not
///   json      nested JSON with `size` scalar leaves through json_to_doc
Doc generate_bench_doc(const BenchSpec& spec);

struct BenchReport {
  double generation_ms = 0;
  double time_ms = 0;  // median over spec.repeats prints
  std::size_t lines = 0;
  bool tainted = false;
  std::string cost;
  std::size_t doc_nodes = 0;
  std::uint64_t doc_hash = 0;
  Layout layout;
};

/// Generates and prints with the quadratic factory at spec.page_width.
/// Runs on its own deep stack.
BenchReport run_bench(const BenchSpec& spec);

/// One `key: value` line per field, layout excluded.
std::string format_bench_report(const BenchReport& r);

}  // namespace pretty
