#pragma once

#include <any>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pretty {

enum class DocKind : std::uint8_t {
  text,
  newline,
  fail,
  concat,
  nest,
  align,
  reset,
  alt,
  with_cost,
};

/// Weight at which a node becomes a memoization point for the resolver.
inline constexpr std::uint32_t kMemoWeightLimit = 6;

class Doc;

namespace detail {

struct DocNode;
struct DocAccess;
using NodePtr = std::shared_ptr<DocNode>;

struct DocNode {
  std::uint64_t id = 0;
  DocKind kind = DocKind::text;
  bool has_flat_alt = false;  // newline only
  bool nonempty = true;       // evaluates to at least one layout
  bool memo_point = false;
  mutable bool flat = false;  // flatten(this) is this
  std::uint32_t memo_weight = 0;
  std::size_t amount = 0;         // nest
  std::size_t line_estimate = 1;  // overestimate of the line count
  std::string content;            // text, or the flat alternative of a newline
  std::string cost_label;         // with_cost
  std::any extra_cost;            // with_cost
  NodePtr left;                   // concat / alt, or the single child of a wrapper
  NodePtr right;                  // concat / alt
  mutable NodePtr flattened;

  DocNode() = default;
  DocNode(const DocNode&) = delete;
  DocNode& operator=(const DocNode&) = delete;
  ~DocNode();
};

}  // namespace detail

/// Immutable handle to a node of a document DAG.
///
/// Copying a Doc copies the handle, not the node: two copies have the same
/// id(), and reusing a Doc in several places is how sharing is expressed.
class Doc {
 public:
  std::uint64_t id() const noexcept { return node_->id; }
  DocKind kind() const noexcept { return node_->kind; }

  /// Text content, or the flat alternative of a newline.
  const std::string& content() const noexcept { return node_->content; }
  bool has_flat_alternative() const noexcept { return node_->has_flat_alt; }
  std::size_t amount() const noexcept { return node_->amount; }

  Doc left() const { return Doc(node_->left); }
  Doc right() const { return Doc(node_->right); }
  /// Child of nest/align/reset/with_cost.
  Doc inner() const { return Doc(node_->left); }

  const std::any& extra_cost() const noexcept { return node_->extra_cost; }
  const std::string& cost_label() const noexcept { return node_->cost_label; }

  bool nonempty() const noexcept { return node_->nonempty; }
  bool memo_point() const noexcept { return node_->memo_point; }
  std::uint32_t memo_weight() const noexcept { return node_->memo_weight; }
  std::size_t line_estimate() const noexcept { return node_->line_estimate; }

  bool is_choiceless() const;

  const detail::DocNode* node() const noexcept { return node_.get(); }

  friend bool same_node(const Doc& a, const Doc& b) noexcept { return a.node_ == b.node_; }

 private:
  explicit Doc(detail::NodePtr node) : node_(std::move(node)) {}

  detail::NodePtr node_;

  friend struct detail::DocAccess;
};

// Leaves.
Doc text(std::string_view s);
Doc nl();
Doc newline(std::optional<std::string> flat_alternative);
Doc hard_nl();
Doc fail();

// Composites. Children are referenced, never copied.
Doc concat(const Doc& a, const Doc& b);
Doc nest(std::size_t amount, const Doc& d);
Doc align(const Doc& d);
Doc reset(const Doc& d);
Doc alt(const Doc& a, const Doc& b);

Doc with_cost_erased(std::any extra, std::string label, const Doc& d);

std::string cost_label(std::int64_t cost);

/// Adds `extra` to the cost of every layout of `d`. The cost type must match
/// the factory the document is printed with.
template <class Cost>
Doc with_cost(Cost extra, const Doc& d) {
  using pretty::cost_label;
  auto label = cost_label(extra);
  return with_cost_erased(std::any(std::move(extra)), std::move(label), d);
}

/// The extra cost of a with_cost node, checked against the factory's type.
template <class Cost>
const Cost& extra_cost_as(const Doc& d) {
  if (const auto* p = std::any_cast<Cost>(&d.extra_cost())) return *p;
  throw std::invalid_argument("with_cost: extra cost type does not match the cost factory");
}

/// Replaces every reachable newline by its flat alternative (hard newlines
/// become fail). Memoized per node; returns `d` itself when nothing changes.
Doc flatten(const Doc& d);

Doc group(const Doc& d);
/// a <> nl <> b
Doc vcat(const Doc& a, const Doc& b);
/// a <> align b
Doc acat(const Doc& a, const Doc& b);

/// Word wrapping: words joined by a choice between a space and a newline.
Doc fill_sep(const std::vector<std::string>& words);

/// Concatenates a non-empty sequence left to right.
Doc concat_all(const std::vector<Doc>& docs);

/// Structural equality, ignoring node identity.
bool structurally_equal(const Doc& a, const Doc& b);

/// Hash consistent with structurally_equal. Linear in DAG size.
std::uint64_t structural_hash(const Doc& d);

/// Number of distinct nodes reachable from `d` (including `d`).
std::size_t dag_size(const Doc& d);

/// Ids of the distinct nodes reachable from `d`.
std::vector<std::uint64_t> reachable_ids(const Doc& d);

}  // namespace pretty
