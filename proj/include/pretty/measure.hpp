#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "pretty/cost_factory.hpp"
#include "pretty/doc.hpp"
#include "pretty/tokens.hpp"

namespace pretty {

/// What a measure renders to: a choiceless document, or a token rope in
/// fused mode.
using Payload = std::variant<Doc, TokenPtr>;

template <class Cost>
struct Measure {
  std::size_t last = 0;
  Cost cost{};
  Payload payload;
  std::size_t max_column = 0;
  std::size_t max_indent = 0;
};

template <CostFactory F>
bool dominates(const F& f, const Measure<cost_t<F>>& a, const Measure<cost_t<F>>& b) {
  return a.last <= b.last && f.le(a.cost, b.cost);
}

inline Payload concat_payload(const Payload& a, const Payload& b) {
  if (const auto* da = std::get_if<Doc>(&a)) return concat(*da, std::get<Doc>(b));
  return token_seq(std::get<TokenPtr>(a), std::get<TokenPtr>(b));
}

/// a ∘ b, for b measured at column a.last.
template <CostFactory F>
Measure<cost_t<F>> measure_concat(const F& f, const Measure<cost_t<F>>& a, const Measure<cost_t<F>>& b) {
  return {b.last, f.add(a.cost, b.cost), concat_payload(a.payload, b.payload),
          std::max(a.max_column, b.max_column), std::max(a.max_indent, b.max_indent)};
}

/// A deferred measure. The body runs at most once, on the first force().
template <class Cost>
class Promise {
 public:
  using Body = std::function<Measure<Cost>()>;

  explicit Promise(Body body) : body_(std::move(body)) {}
  explicit Promise(Measure<Cost> value) : value_(std::move(value)) {}

  const Measure<Cost>& force() {
    if (!value_) {
      Body body = std::move(body_);
      body_ = nullptr;
      value_.emplace(body());
    }
    return *value_;
  }

  bool forced() const noexcept { return value_.has_value(); }

 private:
  Body body_;
  std::optional<Measure<Cost>> value_;
};

template <class Cost>
using PromisePtr = std::shared_ptr<Promise<Cost>>;

/// Result of resolving a document in a context: a Pareto frontier (last
/// strictly decreasing, cost strictly increasing), a tainted deferred
/// measure, or nothing when the document has no layout at all.
template <class Cost>
class MeasureSet {
 public:
  enum class Kind : unsigned char { empty, tainted, frontier };
  using List = std::vector<Measure<Cost>>;

  MeasureSet() = default;

  static MeasureSet tainted(PromisePtr<Cost> p) {
    MeasureSet s;
    s.kind_ = Kind::tainted;
    s.promise_ = std::move(p);
    return s;
  }
  static MeasureSet tainted(Measure<Cost> m) {
    return tainted(std::make_shared<Promise<Cost>>(std::move(m)));
  }
  static MeasureSet deferred(typename Promise<Cost>::Body body) {
    return tainted(std::make_shared<Promise<Cost>>(std::move(body)));
  }
  static MeasureSet frontier(List ms) {
    if (ms.empty()) throw std::invalid_argument("a frontier has at least one measure");
    MeasureSet s;
    s.kind_ = Kind::frontier;
    s.list_ = std::make_shared<const List>(std::move(ms));
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_empty() const noexcept { return kind_ == Kind::empty; }
  bool is_tainted() const noexcept { return kind_ == Kind::tainted; }
  bool is_frontier() const noexcept { return kind_ == Kind::frontier; }

  const List& measures() const {
    if (!is_frontier()) throw std::logic_error("not a frontier");
    return *list_;
  }
  const PromisePtr<Cost>& promise() const {
    if (!is_tainted()) throw std::logic_error("not tainted");
    return promise_;
  }

 private:
  Kind kind_ = Kind::empty;
  std::shared_ptr<const List> list_;
  PromisePtr<Cost> promise_;
};

/// Drops every measure dominated by its successor. Input must be sorted by
/// last strictly decreasing with costs non-decreasing.
template <CostFactory F>
std::vector<Measure<cost_t<F>>> dedup(const F& f, std::vector<Measure<cost_t<F>>> ms) {
  std::vector<Measure<cost_t<F>>> out;
  out.reserve(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (k + 1 < ms.size() && dominates(f, ms[k + 1], ms[k])) continue;
    out.push_back(std::move(ms[k]));
  }
  return out;
}

/// Merge of two frontiers computed in the same context.
template <CostFactory F>
std::vector<Measure<cost_t<F>>> merge_lists(const F& f, const std::vector<Measure<cost_t<F>>>& xs,
                                            const std::vector<Measure<cost_t<F>>>& ys) {
  std::vector<Measure<cost_t<F>>> out;
  out.reserve(xs.size() + ys.size());
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < xs.size() && b < ys.size()) {
    if (dominates(f, xs[a], ys[b])) {
      ++b;
    } else if (dominates(f, ys[b], xs[a])) {
      ++a;
    } else if (xs[a].last > ys[b].last) {
      out.push_back(xs[a++]);
    } else {
      out.push_back(ys[b++]);
    }
  }
  out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(a), xs.end());
  out.insert(out.end(), ys.begin() + static_cast<std::ptrdiff_t>(b), ys.end());
  return out;
}

/// Left-biased merge. A frontier beats a tainted set; two tainted sets keep
/// the left one; an empty set is the identity.
template <CostFactory F>
MeasureSet<cost_t<F>> merge(const F& f, const MeasureSet<cost_t<F>>& a, const MeasureSet<cost_t<F>>& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (b.is_tainted()) return a;
  if (a.is_tainted()) return b;
  return MeasureSet<cost_t<F>>::frontier(merge_lists(f, a.measures(), b.measures()));
}

template <class Cost>
MeasureSet<Cost> taint(const MeasureSet<Cost>& s) {
  if (!s.is_frontier()) return s;
  return MeasureSet<Cost>::tainted(s.measures().front());
}

/// Applies `fn` to every measure. A pending tainted measure stays pending.
template <class Cost, class Fn>
MeasureSet<Cost> lift(const MeasureSet<Cost>& s, Fn fn) {
  switch (s.kind()) {
    case MeasureSet<Cost>::Kind::empty:
      return s;
    case MeasureSet<Cost>::Kind::frontier: {
      std::vector<Measure<Cost>> out;
      out.reserve(s.measures().size());
      for (const auto& m : s.measures()) out.push_back(fn(m));
      return MeasureSet<Cost>::frontier(std::move(out));
    }
    case MeasureSet<Cost>::Kind::tainted:
      break;
  }
  auto p = s.promise();
  if (p->forced()) return MeasureSet<Cost>::tainted(fn(p->force()));
  return MeasureSet<Cost>::deferred([p, fn = std::move(fn)] { return fn(p->force()); });
}

}  // namespace pretty
