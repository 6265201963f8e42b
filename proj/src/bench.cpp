#include "pretty/bench.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pretty/cost_factory.hpp"
#include "pretty/deep_stack.hpp"
#include "pretty/formatters.hpp"
#include "pretty/random.hpp"
#include "pretty/resolver.hpp"

namespace pretty {

namespace {

constexpr std::size_t kMaxSize = std::size_t{1} << 24;
constexpr std::size_t kMaxTreeDepth = 24;
constexpr int kMaxAttempts = 2000;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string random_word(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  std::string w(rng.between(lo, hi), 'a');
  for (char& c : w) c = static_cast<char>('a' + rng.below(26));
  return w;
}

Doc concat_chain(std::size_t n) {
  Doc d = text("a");
  for (std::size_t k = 1; k < n; ++k) d = concat(d, text(std::string(1, static_cast<char>('a' + k % 26))));
  return d;
}

Doc fillsep_doc(std::size_t n, SplitMix64& rng) {
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t k = 0; k < n; ++k) words.push_back(random_word(rng, 1, 8));
  return fill_sep(words);
}

Doc flatten_doc(std::size_t n) {
  Doc d = text("line");
  for (std::size_t k = 0; k < n; ++k) d = group(vcat(d, text("line")));
  return d;
}

SExp full_tree(std::size_t depth) {
  if (depth == 0) return SExp::make_atom("a");
  SExp sub = full_tree(depth - 1);
  return SExp::make_list({sub, sub});
}

// Uniform plane tree with n nodes: a shuffled sequence of n-1 up steps and n
// down steps has exactly one rotation whose proper prefixes stay
// non-negative (cycle lemma); dropping its final down step leaves a Dyck path.
std::vector<bool> random_dyck_path(std::size_t n, SplitMix64& rng) {
  std::vector<bool> steps(2 * n - 1, false);
  std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(n - 1), true);
  for (std::size_t k = steps.size() - 1; k > 0; --k) std::swap(steps[k], steps[rng.below(k + 1)]);
  long height = 0;
  long lowest = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    height += steps[k] ? 1 : -1;
    if (height < lowest) {
      lowest = height;
      start = k + 1;
    }
  }
  std::vector<bool> path;
  path.reserve(steps.size() - 1);
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) path.push_back(steps[(start + k) % steps.size()]);
  return path;
}

SExp tree_from_path(const std::vector<bool>& path, SplitMix64& rng) {
  // Each node is a frame; a node with children becomes (head child...).
  struct Frame {
    std::string head;
    std::vector<SExp> children;
  };
  std::vector<Frame> stack;
  stack.push_back({random_word(rng, 1, 8), {}});
  auto close = [](Frame&& f) {
    if (f.children.empty()) return SExp::make_atom(std::move(f.head));
    std::vector<SExp> items;
    items.reserve(f.children.size() + 1);
    items.push_back(SExp::make_atom(std::move(f.head)));
    for (auto& c : f.children) items.push_back(std::move(c));
    return SExp::make_list(std::move(items));
  };
  for (bool up : path) {
    if (up) {
      stack.push_back({random_word(rng, 1, 8), {}});
    } else {
      SExp done = close(std::move(stack.back()));
      stack.pop_back();
      stack.back().children.push_back(std::move(done));
    }
  }
  return close(std::move(stack.back()));
}

struct Extent {
  std::size_t max_column;
  std::size_t last;
};

// Width of the layout where every list is vertical, starting at column c.
Extent vertical_extent(const SExp& e, std::size_t c) {
  if (!e.is_list) return {c + e.atom.size(), c + e.atom.size()};
  if (e.items.empty()) return {c + 2, c + 2};
  std::size_t widest = c + 1;
  std::size_t last = c + 1;
  for (const SExp& x : e.items) {
    Extent sub = vertical_extent(x, c + 1);
    widest = std::max(widest, sub.max_column);
    last = sub.last;
  }
  return {std::max(widest, last + 1), last + 1};
}

SExp filtered_tree(const BenchSpec& spec, SplitMix64& rng, bool want_fit) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SExp t = tree_from_path(random_dyck_path(spec.size, rng), rng);
    const bool fits = vertical_extent(t, 0).max_column <= spec.page_width;
    if (fits == want_fit) return t;
  }
  throw std::runtime_error("no random tree of size " + std::to_string(spec.size) +
                           (want_fit ? " fits" : " overflows") + " the page width");
}

using Json = nlohmann::ordered_json;

Json random_json(std::size_t leaves, std::size_t depth, SplitMix64& rng) {
  if (leaves == 1 || depth == 0) {
    switch (rng.below(5)) {
      case 0:
        return static_cast<std::int64_t>(rng.below(100000));
      case 1:
        return rng.chance(1, 2);
      case 2:
        return random_word(rng, 20, 60);
      default:
        return random_word(rng, 1, 10);
    }
  }
  const std::size_t parts = std::min<std::size_t>(leaves, rng.between(2, 5));
  // Split `leaves` into `parts` positive sizes.
  std::vector<std::size_t> sizes(parts, 1);
  for (std::size_t k = parts; k < leaves; ++k) ++sizes[rng.below(parts)];
  const bool object = rng.chance(1, 2);
  Json out = object ? Json::object() : Json::array();
  for (std::size_t k = 0; k < parts; ++k) {
    Json child = random_json(sizes[k], depth - 1, rng);
    if (object) {
      out[random_word(rng, 1, 6) + std::to_string(k)] = std::move(child);
    } else {
      out.push_back(std::move(child));
    }
  }
  return out;
}

template <class T>
T median(std::vector<T> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

}  // namespace

std::optional<BenchFamily> parse_bench_family(std::string_view name) {
  for (auto f : {BenchFamily::concat, BenchFamily::fillsep, BenchFamily::flatten, BenchFamily::sexpfull,
                 BenchFamily::randfit, BenchFamily::randover, BenchFamily::json}) {
    if (bench_family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string bench_family_name(BenchFamily f) {
  switch (f) {
    case BenchFamily::concat: return "concat";
    case BenchFamily::fillsep: return "fillsep";
    case BenchFamily::flatten: return "flatten";
    case BenchFamily::sexpfull: return "sexpfull";
    case BenchFamily::randfit: return "randfit";
    case BenchFamily::randover: return "randover";
    case BenchFamily::json: return "json";
  }
  return "?";
}

Doc generate_bench_doc(const BenchSpec& spec) {
  if (spec.size == 0) throw std::invalid_argument("benchmark size must be positive");
  if (spec.size > kMaxSize) throw std::invalid_argument("benchmark size too large");
  SplitMix64 rng(spec.seed);
  switch (spec.family) {
    case BenchFamily::concat:
      return concat_chain(spec.size);
    case BenchFamily::fillsep:
      return fillsep_doc(spec.size, rng);
    case BenchFamily::flatten:
      return flatten_doc(spec.size);
    case BenchFamily::sexpfull:
      if (spec.size > kMaxTreeDepth) throw std::invalid_argument("sexpfull depth too large");
      return sexp_to_doc(full_tree(spec.size));
    case BenchFamily::randfit:
    case BenchFamily::randover:
      return sexp_to_doc(filtered_tree(spec, rng, spec.family == BenchFamily::randfit));
    case BenchFamily::json:
      return json_to_doc(random_json(spec.size, 12, rng).dump());
  }
  throw std::invalid_argument("unknown benchmark family");
}

BenchReport run_bench(const BenchSpec& spec) {
  if (spec.repeats == 0) throw std::invalid_argument("benchmark needs at least one run");
  return with_deep_stack([&] {
    BenchReport report;
    const auto g0 = Clock::now();
    Doc doc = generate_bench_doc(spec);
    report.generation_ms = ms_since(g0);
    report.doc_nodes = dag_size(doc);
    report.doc_hash = structural_hash(doc);

    const QuadraticFactory factory(spec.page_width);
    ResolverConfig cfg;
    cfg.computation_width = spec.computation_width;
    cfg.fused = spec.fused;
    std::vector<double> times;
    for (std::size_t k = 0; k < spec.repeats; ++k) {
      const auto t0 = Clock::now();
      auto result = print(doc, factory, cfg);
      times.push_back(ms_since(t0));
      if (k == 0) {
        report.tainted = result.tainted;
        report.cost = cost_label(result.cost);
        report.lines = result.layout.height();
        report.layout = std::move(result.layout);
      }
    }
    report.time_ms = median(times);
    return report;
  });
}

std::string format_bench_report(const BenchReport& r) {
  std::ostringstream out;
  out << "time_ms: " << r.time_ms << '\n'
      << "lines: " << r.lines << '\n'
      << "tainted: " << (r.tainted ? "yes" : "no") << '\n'
      << "cost: " << r.cost << '\n'
      << "generation_ms: " << r.generation_ms << '\n'
      << "doc_nodes: " << r.doc_nodes << '\n';
  return out.str();
}

}  // namespace pretty
