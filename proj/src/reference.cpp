#include "pretty/reference.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace pretty {

namespace {

// Appends `b` to `a`, joining a's last line with b's first.
void append_layout(Layout& a, Layout&& b) {
  a.lines.back() += b.lines.front();
  for (std::size_t k = 1; k < b.lines.size(); ++k) {
    a.lines.push_back(std::move(b.lines[k]));
    a.indents.push_back(b.indents[k]);
  }
}

std::optional<Layout> render_rec(const Doc& d, std::size_t c, std::size_t i, bool flat) {
  switch (d.kind()) {
    case DocKind::text:
      return Layout{{d.content()}, {0}};
    case DocKind::newline:
      if (!flat) return Layout{{"", std::string(i, ' ')}, {0, i}};
      if (!d.has_flat_alternative()) return std::nullopt;
      return Layout{{d.content()}, {0}};
    case DocKind::fail:
      return std::nullopt;
    case DocKind::concat: {
      auto a = render_rec(d.left(), c, i, flat);
      if (!a) return std::nullopt;
      const std::size_t next = a->lines.size() == 1 ? c + a->lines.front().size() : a->lines.back().size();
      auto b = render_rec(d.right(), next, i, flat);
      if (!b) return std::nullopt;
      append_layout(*a, std::move(*b));
      return a;
    }
    case DocKind::nest:
      return render_rec(d.inner(), c, i + d.amount(), flat);
    case DocKind::align:
      return render_rec(d.inner(), c, c, flat);
    case DocKind::reset:
      return render_rec(d.inner(), c, 0, flat);
    case DocKind::with_cost:
      return render_rec(d.inner(), c, i, flat);
    case DocKind::alt:
      break;
  }
  throw std::invalid_argument("render: document has a choice");
}

// Insertion-ordered set of documents under structural equality.
class DocSet {
 public:
  void insert(const Doc& d) {
    auto& bucket = index_[structural_hash(d)];
    for (std::size_t k : bucket) {
      if (structurally_equal(items_[k], d)) return;
    }
    bucket.push_back(items_.size());
    items_.push_back(d);
  }

  std::vector<Doc> take() && { return std::move(items_); }

 private:
  std::vector<Doc> items_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index_;
};

class Widener {
 public:
  const std::vector<Doc>& run(const Doc& d) {
    if (auto it = memo_.find(d.id()); it != memo_.end()) return it->second;
    DocSet out;
    switch (d.kind()) {
      case DocKind::text:
      case DocKind::newline:
        out.insert(d);
        break;
      case DocKind::fail:
        break;
      case DocKind::concat: {
        const auto& as = run(d.left());
        const auto& bs = run(d.right());
        for (const Doc& a : as) {
          for (const Doc& b : bs) {
            const bool unchanged = same_node(a, d.left()) && same_node(b, d.right());
            out.insert(unchanged ? d : concat(a, b));
          }
        }
        break;
      }
      case DocKind::nest:
      case DocKind::align:
      case DocKind::reset:
      case DocKind::with_cost:
        for (const Doc& x : run(d.inner())) {
          if (same_node(x, d.inner())) {
            out.insert(d);
          } else if (d.kind() == DocKind::nest) {
            out.insert(nest(d.amount(), x));
          } else if (d.kind() == DocKind::align) {
            out.insert(align(x));
          } else if (d.kind() == DocKind::reset) {
            out.insert(reset(x));
          } else {
            out.insert(with_cost_erased(d.extra_cost(), d.cost_label(), x));
          }
        }
        break;
      case DocKind::alt:
        for (const Doc& x : run(d.left())) out.insert(x);
        for (const Doc& x : run(d.right())) out.insert(x);
        break;
    }
    return memo_.emplace(d.id(), std::move(out).take()).first->second;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<Doc>> memo_;
};

}  // namespace

std::optional<Layout> render(const Doc& d, PrintContext ctx) {
  auto out = render_rec(d, ctx.column, ctx.indent, ctx.flatten);
  if (out) out->indents.front() = 0;
  return out;
}

std::vector<Doc> widen(const Doc& d) {
  Widener w;
  return w.run(d);
}

std::vector<Layout> eval(const Doc& d) {
  std::vector<Layout> out;
  for (const Doc& choice : widen(d)) {
    auto layout = render(choice);
    if (!layout) continue;
    if (std::find(out.begin(), out.end(), *layout) == out.end()) out.push_back(std::move(*layout));
  }
  return out;
}

}  // namespace pretty
