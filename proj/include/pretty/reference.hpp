#pragma once

// Executable ground truth for documents: rendering, widening, evaluation, the
// per-layout measure and an exhaustive optimal printer. Everything here is
// exponential in the number of choices and is meant for tests and small
// inputs.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "pretty/cost_factory.hpp"
#include "pretty/doc.hpp"
#include "pretty/errors.hpp"
#include "pretty/layout.hpp"

namespace pretty {

struct PrintContext {
  std::size_t column = 0;
  std::size_t indent = 0;
  bool flatten = false;
};

/// Renders a choiceless document. Returns nullopt when the document cannot
/// produce a layout (fail, or a hard newline in flattening mode).
/// Throws std::invalid_argument if an alternative is reachable.
std::optional<Layout> render(const Doc& d, PrintContext ctx = {});

/// All choiceless documents `d` denotes, deduplicated structurally, in a
/// fixed enumeration order (left alternatives first).
std::vector<Doc> widen(const Doc& d);

/// Every layout of `d` rendered at column 0, indentation 0, deduplicated.
std::vector<Layout> eval(const Doc& d);

template <class Cost>
struct OracleMeasure {
  std::size_t last = 0;
  Cost cost{};
  std::size_t max_column = 0;
  std::size_t max_indent = 0;
};

namespace detail {

template <CostFactory F>
std::optional<OracleMeasure<cost_t<F>>> measure_of(const F& f, const Doc& d, std::size_t c, std::size_t i) {
  using M = OracleMeasure<cost_t<F>>;
  switch (d.kind()) {
    case DocKind::text: {
      const std::size_t end = c + d.content().size();
      return M{end, f.text_cost(c, d.content().size()), end, i};
    }
    case DocKind::newline:
      return M{i, f.nl_cost(i), std::max(c, i), i};
    case DocKind::fail:
      return std::nullopt;
    case DocKind::concat: {
      auto a = measure_of(f, d.left(), c, i);
      if (!a) return std::nullopt;
      auto b = measure_of(f, d.right(), a->last, i);
      if (!b) return std::nullopt;
      return M{b->last, f.add(a->cost, b->cost), std::max(a->max_column, b->max_column),
               std::max(a->max_indent, b->max_indent)};
    }
    case DocKind::nest:
      return measure_of(f, d.inner(), c, i + d.amount());
    case DocKind::align:
    case DocKind::reset: {
      auto m = measure_of(f, d.inner(), c, d.kind() == DocKind::align ? c : 0);
      if (m) m->max_indent = std::max(m->max_indent, i);
      return m;
    }
    case DocKind::with_cost: {
      auto m = measure_of(f, d.inner(), c, i);
      if (m) m->cost = f.add(extra_cost_as<cost_t<F>>(d), m->cost);
      return m;
    }
    case DocKind::alt:
      break;
  }
  throw std::invalid_argument("measure_oracle: document has a choice");
}

}  // namespace detail

/// Measure of a choiceless document placed at column `c`, indentation `i`:
/// final column, cost, and the largest column and indentation reached.
template <CostFactory F>
std::optional<OracleMeasure<cost_t<F>>> measure_oracle(const Doc& d, std::size_t c, std::size_t i, const F& f) {
  return detail::measure_of(f, d, c, i);
}

template <class Cost>
struct BruteForceResult {
  Layout layout;
  Cost cost;
  bool within_limit;
  Doc choice;
};

/// Exhaustive optimal printer. Among widenings whose maximum column and
/// indentation stay within `width_limit`, returns the first of least cost;
/// when none qualifies, the first of least cost overall with
/// within_limit = false. Throws NoLayoutError when nothing renders.
template <CostFactory F>
BruteForceResult<cost_t<F>> brute_force_print(const Doc& d, const F& f, std::size_t width_limit) {
  std::optional<std::size_t> best_within;
  std::optional<std::size_t> best_any;
  std::vector<Doc> choices = widen(d);
  std::vector<OracleMeasure<cost_t<F>>> measures;
  std::vector<std::size_t> valid;
  for (std::size_t k = 0; k < choices.size(); ++k) {
    auto m = measure_oracle(choices[k], 0, 0, f);
    if (!m) continue;
    const std::size_t slot = measures.size();
    measures.push_back(*m);
    valid.push_back(k);
    const bool fits = m->max_column <= width_limit && m->max_indent <= width_limit;
    auto better = [&](const std::optional<std::size_t>& best) {
      return !best || (f.le(m->cost, measures[*best].cost) && !(m->cost == measures[*best].cost));
    };
    if (fits && better(best_within)) best_within = slot;
    if (better(best_any)) best_any = slot;
  }
  if (!best_any) throw NoLayoutError();
  const bool within = best_within.has_value();
  const std::size_t pick = within ? *best_within : *best_any;
  const Doc& choice = choices[valid[pick]];
  auto layout = render(choice);
  return {std::move(*layout), measures[pick].cost, within, choice};
}

}  // namespace pretty
