#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "pretty/cost_factory.hpp"
#include "pretty/doc.hpp"
#include "pretty/errors.hpp"
#include "pretty/layout.hpp"
#include "pretty/measure.hpp"
#include "pretty/tokens.hpp"

namespace pretty {

enum class MemoPolicy : unsigned char {
  all,       // every node
  weighted,  // nodes whose memo weight reached kMemoWeightLimit
  none,
};

struct ResolverConfig {
  std::size_t computation_width = 100;
  bool fused = false;
  MemoPolicy memo = MemoPolicy::weighted;
  /// Nodes whose memo weight reaches this are memoized too. Weights are
  /// fixed at construction and reset at kMemoWeightLimit, so values above it
  /// behave like kMemoWeightLimit.
  std::uint32_t memo_weight_limit = kMemoWeightLimit;
  /// When both branches of a choice are tainted, keep the one with the smaller
  /// line estimate instead of the left one.
  bool bias_heuristic = false;
};

struct ResolverStats {
  std::size_t calls = 0;
  std::size_t memo_hits = 0;
  std::size_t deferred_created = 0;
  std::size_t deferred_run = 0;
};

/// Renders a resolved payload at column 0, indentation 0. Iterative.
Layout render_payload(const Payload& p);

/// The optimal printer's core. One instance per print: it owns the memo
/// table, and tainted results handed out may only be forced while it lives.
template <CostFactory F>
class Resolver {
 public:
  using Cost = cost_t<F>;
  using M = Measure<Cost>;
  using Set = MeasureSet<Cost>;
  using Observer = std::function<void(const Doc&, std::size_t, std::size_t, const Set&)>;

  explicit Resolver(const F& f, ResolverConfig cfg = {}) : f_(f), cfg_(cfg) {}

  Resolver(const Resolver&) = delete;
  Resolver& operator=(const Resolver&) = delete;

  /// Called with every result `resolve` returns, memo hits included.
  void set_observer(Observer obs) { observer_ = std::move(obs); }
  const ResolverStats& stats() const noexcept { return stats_; }
  const ResolverConfig& config() const noexcept { return cfg_; }

  Set resolve(const Doc& d, std::size_t c, std::size_t i) {
    ++stats_.calls;
    Set out;
    if (!d.nonempty()) {
      out = Set();
    } else if (c > width() || i > width()) {
      ++stats_.deferred_created;
      out = Set::deferred([this, d, c, i] {
        ++stats_.deferred_run;
        return force(core(d, c, i));
      });
    } else if (memoized(d)) {
      const Key key{d.id(), static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(i)};
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++stats_.memo_hits;
        out = it->second;
      } else {
        out = core(d, c, i);
        memo_.emplace(key, out);
      }
    } else {
      out = core(d, c, i);
    }
    if (observer_) observer_(d, c, i, out);
    return out;
  }

  /// The measure a set stands for at top level: the cheapest of a frontier,
  /// or the forced tainted measure.
  static const M& force(const Set& s) {
    if (s.is_frontier()) return s.measures().front();
    if (s.is_tainted()) return s.promise()->force();
    throw NoLayoutError();
  }

 private:
  struct Key {
    std::uint64_t id;
    std::uint32_t c;
    std::uint32_t i;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.id * 0x9e3779b97f4a7c15ULL;
      h ^= (static_cast<std::uint64_t>(k.c) << 32 | k.i) + 0xbf58476d1ce4e5b9ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  std::size_t width() const noexcept { return cfg_.computation_width; }

  bool memoized(const Doc& d) const noexcept {
    switch (cfg_.memo) {
      case MemoPolicy::all:
        return true;
      case MemoPolicy::weighted:
        return d.memo_point() || d.memo_weight() >= cfg_.memo_weight_limit;
      case MemoPolicy::none:
        return false;
    }
    return false;
  }

  Payload leaf_payload(const Doc& d, std::size_t i) const {
    if (!cfg_.fused) return d;
    if (d.kind() == DocKind::text) return token_text(d.content());
    return token_newline(i);
  }

  // Payload of a wrapper node around `inner`, reusing the node itself when
  // the inner payload is its own child.
  template <class Make>
  static Payload wrap_payload(const Doc& d, const Payload& inner, Make make) {
    const auto* doc = std::get_if<Doc>(&inner);
    if (!doc) return inner;
    if (doc->node() == d.node()->left.get()) return d;
    return make(*doc);
  }

  M concat_measure(const Doc& d, const M& a, const M& b) const {
    Payload p = [&]() -> Payload {
      const auto* da = std::get_if<Doc>(&a.payload);
      if (!da) return token_seq(std::get<TokenPtr>(a.payload), std::get<TokenPtr>(b.payload));
      const Doc& db = std::get<Doc>(b.payload);
      if (da->node() == d.node()->left.get() && db.node() == d.node()->right.get()) return d;
      return concat(*da, db);
    }();
    return {b.last, f_.add(a.cost, b.cost), std::move(p), std::max(a.max_column, b.max_column),
            std::max(a.max_indent, b.max_indent)};
  }

  // Resolves the right child of `d` after the left measure `a`.
  Set concat_after(const Doc& d, const M& a, std::size_t i) {
    Set s = resolve(d.right(), a.last, i);
    if (s.is_tainted()) {
      return lift(s, [this, d, a](const M& b) { return concat_measure(d, a, b); });
    }
    std::vector<M> out;
    out.reserve(s.measures().size());
    for (const M& b : s.measures()) out.push_back(concat_measure(d, a, b));
    return Set::frontier(dedup(f_, std::move(out)));
  }

  Set core(const Doc& d, std::size_t c, std::size_t i) {
    switch (d.kind()) {
      case DocKind::text: {
        const std::size_t end = c + d.content().size();
        M m{end, f_.text_cost(c, d.content().size()), leaf_payload(d, i), end, i};
        if (end > width() || i > width()) return Set::tainted(std::move(m));
        return Set::frontier({std::move(m)});
      }
      case DocKind::newline: {
        M m{i, f_.nl_cost(i), leaf_payload(d, i), std::max(c, i), i};
        if (c > width() || i > width()) return Set::tainted(std::move(m));
        return Set::frontier({std::move(m)});
      }
      case DocKind::fail:
        return Set();
      case DocKind::concat: {
        Set left = resolve(d.left(), c, i);
        if (left.is_tainted()) {
          ++stats_.deferred_created;
          auto pa = left.promise();
          return Set::deferred([this, d, pa, i] {
            ++stats_.deferred_run;
            const M& a = pa->force();
            return concat_measure(d, a, force(taint(resolve(d.right(), a.last, i))));
          });
        }
        Set out;
        for (const M& a : left.measures()) out = merge(f_, out, concat_after(d, a, i));
        return out;
      }
      case DocKind::nest: {
        const std::size_t n = d.amount();
        return lift(resolve(d.inner(), c, i + n), [d, n](const M& m) {
          return M{m.last, m.cost, wrap_payload(d, m.payload, [n](const Doc& x) { return nest(n, x); }),
                   m.max_column, m.max_indent};
        });
      }
      case DocKind::align:
      case DocKind::reset: {
        const bool is_align = d.kind() == DocKind::align;
        Set s = resolve(d.inner(), c, is_align ? c : 0);
        if (i > width()) s = taint(s);
        return lift(s, [d, i, is_align](const M& m) {
          return M{m.last, m.cost,
                   wrap_payload(d, m.payload, [is_align](const Doc& x) { return is_align ? align(x) : reset(x); }),
                   m.max_column, std::max(m.max_indent, i)};
        });
      }
      case DocKind::with_cost: {
        const Cost& extra = extra_cost_as<Cost>(d);
        return lift(resolve(d.inner(), c, i), [this, d, extra](const M& m) {
          return M{m.last, f_.add(extra, m.cost),
                   wrap_payload(d, m.payload,
                                [&d](const Doc& x) { return with_cost_erased(d.extra_cost(), d.cost_label(), x); }),
                   m.max_column, m.max_indent};
        });
      }
      case DocKind::alt: {
        if (!d.left().nonempty()) return resolve(d.right(), c, i);
        if (!d.right().nonempty()) return resolve(d.left(), c, i);
        // S ⊎ S = S; flattening a group yields such choices
        if (d.node()->left == d.node()->right) return resolve(d.left(), c, i);
        Set a = resolve(d.left(), c, i);
        Set b = resolve(d.right(), c, i);
        if (cfg_.bias_heuristic && a.is_tainted() && b.is_tainted() &&
            d.right().line_estimate() < d.left().line_estimate()) {
          return b;
        }
        return merge(f_, a, b);
      }
    }
    return Set();
  }

  const F& f_;
  ResolverConfig cfg_;
  ResolverStats stats_;
  Observer observer_;
  std::unordered_map<Key, Set, KeyHash> memo_;
};

template <class Cost>
struct PrintResult {
  Layout layout;
  Cost cost;
  bool tainted = false;
};

/// Prints `d` optimally within the computation width. Throws NoLayoutError
/// when the document has no layout. Recursion depth follows document depth;
/// run deep documents on a large stack (see deep_stack.hpp).
template <CostFactory F>
PrintResult<cost_t<F>> print(const Doc& d, const F& f, const ResolverConfig& cfg = {}) {
  Resolver<F> r(f, cfg);
  auto s = r.resolve(d, 0, 0);
  if (s.is_empty()) throw NoLayoutError();
  const auto& m = Resolver<F>::force(s);
  return {render_payload(m.payload), m.cost, s.is_tainted()};
}

}  // namespace pretty
