#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "pretty/layout.hpp"
#include "pretty/random.hpp"

namespace pretty {

/// A cost factory defines the optimality objective: a totally ordered cost
/// type, addition, and the cost of placing text and newlines.
///
/// A valid factory must additionally satisfy the contracts exercised by
/// check_factory_validity(); the resolver is only optimal for valid ones.
template <class F>
concept CostFactory = requires(const F& f, const typename F::cost_type& a, std::size_t n) {
  typename F::cost_type;
  requires std::equality_comparable<typename F::cost_type>;
  requires std::copyable<typename F::cost_type>;
  { f.text_cost(n, n) } -> std::same_as<typename F::cost_type>;
  { f.nl_cost(n) } -> std::same_as<typename F::cost_type>;
  { f.add(a, a) } -> std::same_as<typename F::cost_type>;
  { f.le(a, a) } -> std::convertible_to<bool>;
};

template <CostFactory F>
using cost_t = typename F::cost_type;

template <CostFactory F>
cost_t<F> zero(const F& f) {
  return f.text_cost(0, 0);
}

/// Two-component cost ordered lexicographically.
struct OverflowHeight {
  std::int64_t overflow = 0;
  std::int64_t height = 0;

  friend bool operator==(const OverflowHeight&, const OverflowHeight&) = default;
  friend auto operator<=>(const OverflowHeight&, const OverflowHeight&) = default;
};

std::string cost_label(std::int64_t cost);

inline std::string cost_label(const OverflowHeight& c) {
  return "(" + std::to_string(c.overflow) + "," + std::to_string(c.height) + ")";
}

namespace detail {

inline std::int64_t overflow_past(std::size_t c, std::size_t l, std::size_t w) {
  const std::size_t end = c + l;
  const std::size_t start = std::max(w, c);
  return end > start ? static_cast<std::int64_t>(end - start) : 0;
}

}  // namespace detail

/// Sum of overflows, then height.
class LinearFactory {
 public:
  using cost_type = OverflowHeight;

  explicit LinearFactory(std::size_t page_width) : width_(page_width) {}

  std::size_t page_width() const noexcept { return width_; }

  cost_type text_cost(std::size_t c, std::size_t l) const {
    return {detail::overflow_past(c, l, width_), 0};
  }
  cost_type nl_cost(std::size_t /*indent*/) const { return {0, 1}; }
  cost_type add(const cost_type& a, const cost_type& b) const {
    return {a.overflow + b.overflow, a.height + b.height};
  }
  bool le(const cost_type& a, const cost_type& b) const { return a <= b; }

 private:
  std::size_t width_;
};

/// Sum of squared overflows, then height. The default objective.
class QuadraticFactory {
 public:
  using cost_type = OverflowHeight;

  explicit QuadraticFactory(std::size_t page_width) : width_(page_width) {}

  std::size_t page_width() const noexcept { return width_; }

  cost_type text_cost(std::size_t c, std::size_t l) const {
    if (c + l <= width_) return {0, 0};
    // (a + b)^2 - a^2 where a is the part of c past the width and b the new overflow
    const auto a = static_cast<std::int64_t>(std::max(width_, c) - width_);
    const auto b = static_cast<std::int64_t>(c + l - std::max(width_, c));
    return {b * (2 * a + b), 0};
  }
  cost_type nl_cost(std::size_t /*indent*/) const { return {0, 1}; }
  cost_type add(const cost_type& a, const cost_type& b) const {
    return {a.overflow + b.overflow, a.height + b.height};
  }
  bool le(const cost_type& a, const cost_type& b) const { return a <= b; }

 private:
  std::size_t width_;
};

/// Maximum overflow over all lines.
class MaxOverflowFactory {
 public:
  using cost_type = std::int64_t;

  explicit MaxOverflowFactory(std::size_t page_width) : width_(page_width) {}

  std::size_t page_width() const noexcept { return width_; }

  cost_type text_cost(std::size_t c, std::size_t l) const {
    if (l == 0 || c + l <= width_) return 0;
    return static_cast<cost_type>(c + l - width_);
  }
  cost_type nl_cost(std::size_t /*indent*/) const { return 0; }
  cost_type add(cost_type a, cost_type b) const { return std::max(a, b); }
  bool le(cost_type a, cost_type b) const { return a <= b; }

 private:
  std::size_t width_;
};

/// Maximum overflow, then height. Violates translation invariance, so the
/// resolver gives no guarantee for it; it exists to exercise the checker.
class InvalidMaxLexFactory {
 public:
  using cost_type = OverflowHeight;

  explicit InvalidMaxLexFactory(std::size_t page_width) : width_(page_width) {}

  std::size_t page_width() const noexcept { return width_; }

  cost_type text_cost(std::size_t c, std::size_t l) const {
    if (l == 0 || c + l <= width_) return {0, 0};
    return {static_cast<std::int64_t>(c + l - width_), 0};
  }
  cost_type nl_cost(std::size_t /*indent*/) const { return {0, 1}; }
  cost_type add(const cost_type& a, const cost_type& b) const {
    return {std::max(a.overflow, b.overflow), a.height + b.height};
  }
  bool le(const cost_type& a, const cost_type& b) const { return a <= b; }

 private:
  std::size_t width_;
};

/// Cost of `layout` with its first line placed at column `c`.
///
/// Each line after the first is charged nl_cost(indent) plus the text cost of
/// the characters after its indentation, placed at column indent.
template <CostFactory F>
cost_t<F> layout_cost(const F& f, const Layout& layout, std::size_t c) {
  if (layout.lines.empty()) throw std::invalid_argument("layout_cost of an empty layout");
  cost_t<F> total = f.text_cost(c, layout.lines.front().size());
  for (std::size_t k = 1; k < layout.lines.size(); ++k) {
    const std::size_t indent = std::min(layout.indents[k], layout.lines[k].size());
    total = f.add(total, f.add(f.nl_cost(indent), f.text_cost(indent, layout.lines[k].size() - indent)));
  }
  return total;
}

struct FactoryReport {
  bool valid = true;
  std::size_t trials_run = 0;
  std::string contract;  // name of the violated contract
  std::string witness;   // values exhibiting the violation
};

namespace detail {

template <CostFactory F>
class ContractChecker {
 public:
  using Cost = cost_t<F>;

  ContractChecker(const F& f, std::size_t bound, std::uint64_t seed) : f_(f), bound_(bound), rng_(seed) {}

  // Returns false and fills `report` on the first violation.
  bool trial(FactoryReport& report) {
    const Cost a = reachable();
    const Cost b = reachable();
    const Cost c = reachable();
    const Cost zero_cost = zero(f_);

    if (!(f_.le(a, b) || f_.le(b, a))) {
      return fail(report, "totality", show(a) + " vs " + show(b));
    }
    if (f_.le(a, b) && f_.le(b, a) && !(a == b)) {
      return fail(report, "antisymmetry", show(a) + " vs " + show(b));
    }
    if (f_.le(a, b) && f_.le(b, c) && !f_.le(a, c)) {
      return fail(report, "transitivity", show(a) + " <= " + show(b) + " <= " + show(c));
    }

    // Translation invariance over ordered pairs; the second pair is often equal.
    auto [lo1, hi1] = ordered(a, b);
    Cost lo2 = reachable();
    Cost hi2 = rng_.chance(1, 2) ? lo2 : reachable();
    std::tie(lo2, hi2) = ordered(lo2, hi2);
    if (!f_.le(f_.add(lo1, lo2), f_.add(hi1, hi2))) {
      return fail(report, "translation invariance",
                  show(lo1) + " + " + show(lo2) + " vs " + show(hi1) + " + " + show(hi2));
    }

    if (!(f_.add(f_.add(a, b), c) == f_.add(a, f_.add(b, c)))) {
      return fail(report, "associativity", show(a) + ", " + show(b) + ", " + show(c));
    }
    if (!(f_.add(a, zero_cost) == a) || !(f_.add(zero_cost, a) == a)) {
      return fail(report, "identity", show(a));
    }

    const std::size_t col = natural();
    const std::size_t col2 = natural();
    const std::size_t len = natural();
    const std::size_t lo_col = std::min(col, col2);
    const std::size_t hi_col = std::max(col, col2);
    if (!f_.le(f_.text_cost(lo_col, len), f_.text_cost(hi_col, len))) {
      return fail(report, "text monotone in column",
                  "c=" + std::to_string(lo_col) + " c'=" + std::to_string(hi_col) + " l=" + std::to_string(len));
    }

    const std::size_t l1 = natural();
    const std::size_t l2 = natural();
    if (!(f_.text_cost(col, l1 + l2) == f_.add(f_.text_cost(col, l1), f_.text_cost(col + l1, l2)))) {
      return fail(report, "text splits",
                  "c=" + std::to_string(col) + " l1=" + std::to_string(l1) + " l2=" + std::to_string(l2));
    }
    if (!(f_.text_cost(col, 0) == zero_cost)) {
      return fail(report, "empty text is zero", "c=" + std::to_string(col));
    }

    const std::size_t i1 = natural();
    const std::size_t i2 = natural();
    if (!f_.le(f_.nl_cost(std::min(i1, i2)), f_.nl_cost(std::max(i1, i2)))) {
      return fail(report, "newline monotone in indentation",
                  "i=" + std::to_string(std::min(i1, i2)) + " i'=" + std::to_string(std::max(i1, i2)));
    }
    return true;
  }

 private:
  std::size_t natural() { return static_cast<std::size_t>(rng_.below(bound_ + 1)); }

  // A cost reachable by the printer: a short sum of text and newline costs.
  Cost reachable() {
    Cost total = piece();
    const auto extra = rng_.below(4);
    for (std::uint64_t k = 0; k < extra; ++k) total = f_.add(total, piece());
    return total;
  }

  Cost piece() {
    if (rng_.chance(1, 3)) return f_.nl_cost(natural());
    return f_.text_cost(natural(), natural());
  }

  std::pair<Cost, Cost> ordered(const Cost& x, const Cost& y) const {
    return f_.le(x, y) ? std::pair{x, y} : std::pair{y, x};
  }

  static std::string show(const Cost& c) {
    using pretty::cost_label;
    return cost_label(c);
  }

  static bool fail(FactoryReport& report, std::string contract, std::string witness) {
    report.valid = false;
    report.contract = std::move(contract);
    report.witness = std::move(witness);
    return false;
  }

  const F& f_;
  std::size_t bound_;
  SplitMix64 rng_;
};

}  // namespace detail

/// Randomized check of the factory contracts. Columns, lengths and
/// indentation levels are drawn from [0, 2 * sample_width]; costs are random
/// sums of text and newline costs. Stops at the first counterexample.
template <CostFactory F>
FactoryReport check_factory_validity(const F& f, std::size_t trials, std::uint64_t seed,
                                     std::size_t sample_width) {
  if (trials == 0) throw std::invalid_argument("check_factory_validity needs at least one trial");
  FactoryReport report;
  detail::ContractChecker<F> checker(f, 2 * sample_width, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    report.trials_run = t + 1;
    if (!checker.trial(report)) break;
  }
  return report;
}

template <CostFactory F>
  requires requires(const F& f) { f.page_width(); }
FactoryReport check_factory_validity(const F& f, std::size_t trials, std::uint64_t seed) {
  return check_factory_validity(f, trials, seed, f.page_width());
}

}  // namespace pretty
