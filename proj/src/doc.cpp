#include "pretty/doc.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace pretty {

namespace detail {

DocNode::~DocNode() {
  // Deep chains would otherwise recurse once per node on destruction.
  std::vector<NodePtr> pending;
  auto take = [&pending](NodePtr& p) {
    if (p && p.use_count() == 1) pending.push_back(std::move(p));
  };
  take(left);
  take(right);
  take(flattened);
  while (!pending.empty()) {
    NodePtr n = std::move(pending.back());
    pending.pop_back();
    take(n->left);
    take(n->right);
    take(n->flattened);
  }
}

struct DocAccess {
  static Doc wrap(NodePtr n) { return Doc(std::move(n)); }
  static const NodePtr& ptr(const Doc& d) { return d.node_; }
};

}  // namespace detail

namespace {

using detail::DocAccess;
using detail::DocNode;
using detail::NodePtr;

std::atomic<std::uint64_t> next_id{1};

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

std::uint32_t observed_weight(const DocNode& n) { return n.memo_point ? 0 : n.memo_weight; }

NodePtr make_node(DocKind kind) {
  auto n = std::make_shared<DocNode>();
  n->id = next_id.fetch_add(1, std::memory_order_relaxed);
  n->kind = kind;
  return n;
}

void check_newline_free(std::string_view s) {
  if (s.find('\n') != std::string_view::npos) {
    throw std::invalid_argument("text must not contain a newline character");
  }
}

// Fills the derived bookkeeping fields of a freshly linked composite.
Doc finish(NodePtr n) {
  std::uint32_t w = observed_weight(*n->left);
  if (n->right) w = std::max(w, observed_weight(*n->right));
  n->memo_weight = w + 1;
  n->memo_point = n->memo_weight >= kMemoWeightLimit;

  switch (n->kind) {
    case DocKind::concat:
      n->nonempty = n->left->nonempty && n->right->nonempty;
      n->line_estimate = saturating_add(n->left->line_estimate, n->right->line_estimate) - 1;
      break;
    case DocKind::alt:
      n->nonempty = n->left->nonempty || n->right->nonempty;
      n->line_estimate = std::max(n->left->line_estimate, n->right->line_estimate);
      break;
    default:
      n->nonempty = n->left->nonempty;
      n->line_estimate = n->left->line_estimate;
      break;
  }
  return DocAccess::wrap(std::move(n));
}

NodePtr unary_node(DocKind kind, const Doc& d) {
  auto n = make_node(kind);
  n->left = DocAccess::ptr(d);
  return n;
}

NodePtr binary_node(DocKind kind, const Doc& a, const Doc& b) {
  auto n = make_node(kind);
  n->left = DocAccess::ptr(a);
  n->right = DocAccess::ptr(b);
  return n;
}

}  // namespace

bool Doc::is_choiceless() const {
  std::unordered_set<std::uint64_t> seen;
  std::vector<const DocNode*> stack{node_.get()};
  while (!stack.empty()) {
    const DocNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n->id).second) continue;
    if (n->kind == DocKind::alt) return false;
    if (n->left) stack.push_back(n->left.get());
    if (n->right) stack.push_back(n->right.get());
  }
  return true;
}

Doc text(std::string_view s) {
  check_newline_free(s);
  auto n = make_node(DocKind::text);
  n->content = std::string(s);
  return DocAccess::wrap(std::move(n));
}

Doc newline(std::optional<std::string> flat_alternative) {
  auto n = make_node(DocKind::newline);
  if (flat_alternative) {
    check_newline_free(*flat_alternative);
    n->has_flat_alt = true;
    n->content = std::move(*flat_alternative);
  }
  n->line_estimate = 2;
  return DocAccess::wrap(std::move(n));
}

Doc nl() { return newline(std::string(" ")); }

Doc hard_nl() { return newline(std::nullopt); }

Doc fail() {
  auto n = make_node(DocKind::fail);
  n->nonempty = false;
  n->flat = true;
  return DocAccess::wrap(std::move(n));
}

Doc concat(const Doc& a, const Doc& b) { return finish(binary_node(DocKind::concat, a, b)); }

Doc nest(std::size_t amount, const Doc& d) {
  auto n = unary_node(DocKind::nest, d);
  n->amount = amount;
  return finish(std::move(n));
}

Doc align(const Doc& d) { return finish(unary_node(DocKind::align, d)); }

Doc reset(const Doc& d) { return finish(unary_node(DocKind::reset, d)); }

Doc alt(const Doc& a, const Doc& b) { return finish(binary_node(DocKind::alt, a, b)); }

Doc with_cost_erased(std::any extra, std::string label, const Doc& d) {
  auto n = unary_node(DocKind::with_cost, d);
  n->extra_cost = std::move(extra);
  n->cost_label = std::move(label);
  return finish(std::move(n));
}

std::string cost_label(std::int64_t cost) { return std::to_string(cost); }

Doc flatten(const Doc& d) {
  const NodePtr& n = DocAccess::ptr(d);
  if (n->flat) return d;
  if (n->flattened) return DocAccess::wrap(n->flattened);

  Doc result = d;
  switch (n->kind) {
    case DocKind::text:
    case DocKind::fail:
      break;
    case DocKind::newline:
      result = n->has_flat_alt ? text(n->content) : fail();
      break;
    case DocKind::concat:
    case DocKind::alt: {
      Doc a = flatten(d.left());
      Doc b = flatten(d.right());
      if (!same_node(a, d.left()) || !same_node(b, d.right())) {
        result = n->kind == DocKind::concat ? concat(a, b) : alt(a, b);
      }
      break;
    }
    case DocKind::nest:
    case DocKind::align:
    case DocKind::reset:
    case DocKind::with_cost: {
      Doc inner = flatten(d.inner());
      if (!same_node(inner, d.inner())) {
        auto copy = unary_node(n->kind, inner);
        copy->amount = n->amount;
        copy->extra_cost = n->extra_cost;
        copy->cost_label = n->cost_label;
        result = finish(std::move(copy));
      }
      break;
    }
  }

  const NodePtr& r = DocAccess::ptr(result);
  r->flat = true;
  if (r != n) n->flattened = r;
  return result;
}

Doc group(const Doc& d) { return alt(d, flatten(d)); }

Doc vcat(const Doc& a, const Doc& b) { return concat(concat(a, nl()), b); }

Doc acat(const Doc& a, const Doc& b) { return concat(a, align(b)); }

Doc fill_sep(const std::vector<std::string>& words) {
  if (words.empty()) throw std::invalid_argument("fill_sep needs at least one word");
  Doc out = text(words.front());
  for (std::size_t k = 1; k < words.size(); ++k) {
    out = concat(out, concat(alt(text(" "), nl()), text(words[k])));
  }
  return out;
}

Doc concat_all(const std::vector<Doc>& docs) {
  if (docs.empty()) throw std::invalid_argument("concat_all needs at least one document");
  Doc out = docs.front();
  for (std::size_t k = 1; k < docs.size(); ++k) out = concat(out, docs[k]);
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the running state
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_string(std::string_view s) { return std::hash<std::string_view>{}(s); }

}  // namespace

std::uint64_t structural_hash(const Doc& root) {
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  // Post-order over the DAG without recursion.
  std::vector<std::pair<const DocNode*, bool>> stack{{root.node(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    if (memo.count(n->id)) {
      stack.pop_back();
      continue;
    }
    if (!expanded) {
      stack.back().second = true;
      if (n->left && !memo.count(n->left->id)) stack.emplace_back(n->left.get(), false);
      if (n->right && !memo.count(n->right->id)) stack.emplace_back(n->right.get(), false);
      continue;
    }
    stack.pop_back();
    std::uint64_t h = mix(0x51ed27, static_cast<std::uint64_t>(n->kind));
    switch (n->kind) {
      case DocKind::text:
        h = mix(h, hash_string(n->content));
        break;
      case DocKind::newline:
        h = mix(h, n->has_flat_alt ? hash_string(n->content) + 1 : 0);
        break;
      case DocKind::nest:
        h = mix(h, n->amount);
        break;
      case DocKind::with_cost:
        h = mix(h, hash_string(n->cost_label));
        break;
      default:
        break;
    }
    if (n->left) h = mix(h, memo.at(n->left->id));
    if (n->right) h = mix(h, memo.at(n->right->id));
    memo.emplace(n->id, h);
  }
  return memo.at(root.id());
}

bool structurally_equal(const Doc& a, const Doc& b) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> known;
  std::vector<std::pair<const DocNode*, const DocNode*>> stack{{a.node(), b.node()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) continue;
    if (!known.insert({x->id, y->id}).second) continue;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case DocKind::text:
        if (x->content != y->content) return false;
        break;
      case DocKind::newline:
        if (x->has_flat_alt != y->has_flat_alt) return false;
        if (x->has_flat_alt && x->content != y->content) return false;
        break;
      case DocKind::nest:
        if (x->amount != y->amount) return false;
        break;
      case DocKind::with_cost:
        if (x->cost_label != y->cost_label) return false;
        break;
      default:
        break;
    }
    if (x->left) stack.emplace_back(x->left.get(), y->left.get());
    if (x->right) stack.emplace_back(x->right.get(), y->right.get());
  }
  return true;
}

std::vector<std::uint64_t> reachable_ids(const Doc& d) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> ids;
  std::vector<const DocNode*> stack{d.node()};
  while (!stack.empty()) {
    const DocNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n->id).second) continue;
    ids.push_back(n->id);
    if (n->left) stack.push_back(n->left.get());
    if (n->right) stack.push_back(n->right.get());
  }
  return ids;
}

std::size_t dag_size(const Doc& d) { return reachable_ids(d).size(); }

}  // namespace pretty
