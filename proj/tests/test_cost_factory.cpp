#include <doctest.h>

#include <stdexcept>

#include "pretty/cost_factory.hpp"
#include "pretty/random.hpp"
#include "pretty/reference.hpp"
#include "support/examples.hpp"

using namespace pretty;

namespace {

using OH = OverflowHeight;

// Charges every character on its own, so the result only relies on how a
// factory prices one character at a given column.
template <class F>
cost_t<F> per_character_cost(const F& f, const Layout& l, std::size_t c) {
  cost_t<F> total = zero(f);
  for (std::size_t k = 0; k < l.lines.size(); ++k) {
    const std::size_t start = k == 0 ? c : l.indents[k];
    const std::size_t skip = k == 0 ? 0 : l.indents[k];
    if (k > 0) total = f.add(total, f.nl_cost(l.indents[k]));
    for (std::size_t p = skip; p < l.lines[k].size(); ++p) {
      total = f.add(total, f.text_cost(start + (p - skip), 1));
    }
  }
  return total;
}

Layout func_call_layout() { return *render(pretty::testing::func_call_doc(), {3, 0, false}); }
Layout func_call_flat() { return *render(pretty::testing::func_call_doc(), {3, 0, true}); }

}  // namespace

TEST_SUITE("cost_factory") {
  TEST_CASE("text cost formulas") {
    LinearFactory lin(6);
    QuadraticFactory quad(6);
    MaxOverflowFactory mx(6);
    // the flat call is 23 characters wide placed at column 3
    CHECK(lin.text_cost(3, 23) == OH{20, 0});
    CHECK(lin.text_cost(3, 7) == OH{4, 0});
    CHECK(lin.text_cost(8, 3) == OH{3, 0});
    CHECK(quad.text_cost(3, 7) == OH{16, 0});
    CHECK(quad.text_cost(3, 23) == OH{400, 0});
    // already 2 past the width: (2 + 3)^2 - 2^2
    CHECK(quad.text_cost(8, 3) == OH{21, 0});
    CHECK(mx.text_cost(3, 7) == 4);
    CHECK(mx.text_cost(0, 0) == 0);
    for (std::size_t c : {0, 6, 100}) {
      CHECK(lin.text_cost(c, 0) == zero(lin));
      CHECK(quad.text_cost(c, 0) == zero(quad));
      CHECK(mx.text_cost(c, 0) == zero(mx));
    }
  }

  TEST_CASE("newline cost") {
    QuadraticFactory quad(6);
    CHECK(quad.nl_cost(0) == OH{0, 1});
    CHECK(quad.nl_cost(40) == OH{0, 1});
    CHECK(LinearFactory(6).nl_cost(3) == OH{0, 1});
    CHECK(MaxOverflowFactory(6).nl_cost(5) == 0);
  }

  TEST_CASE("add and le") {
    LinearFactory lin(6);
    CHECK(lin.add({8, 1}, {0, 2}) == OH{8, 3});
    CHECK(lin.le({8, 3}, {20, 0}));
    CHECK_FALSE(lin.le({20, 0}, {8, 3}));
    MaxOverflowFactory mx(6);
    CHECK(mx.add(4, 3) == 4);
    SplitMix64 rng(3);
    for (int k = 0; k < 100; ++k) {
      OH x{static_cast<std::int64_t>(rng.below(50)), static_cast<std::int64_t>(rng.below(50))};
      CHECK(lin.add(x, zero(lin)) == x);
      const auto m = static_cast<std::int64_t>(rng.below(50));
      CHECK(mx.add(m, zero(mx)) == m);
    }
  }

  TEST_CASE("layout cost of the call example") {
    const Layout broken = func_call_layout();
    REQUIRE(broken.height() == 4);
    const Layout flat = func_call_flat();
    REQUIRE(flat.height() == 1);
    CHECK(flat.lines.front() == "= func( pretty, print )");

    CHECK(layout_cost(LinearFactory(6), broken, 3) == OH{8, 3});
    CHECK(layout_cost(LinearFactory(6), flat, 3) == OH{20, 0});
    CHECK(layout_cost(QuadraticFactory(6), broken, 3) == OH{26, 3});
    CHECK(layout_cost(QuadraticFactory(6), flat, 3) == OH{400, 0});
    CHECK(layout_cost(MaxOverflowFactory(6), broken, 3) == 4);
    CHECK(layout_cost(MaxOverflowFactory(6), flat, 3) == 20);
  }

  TEST_CASE("layout cost edge cases") {
    CHECK(layout_cost(QuadraticFactory(6), Layout{}, 0) == OH{0, 0});
    CHECK(layout_cost(MaxOverflowFactory(6), Layout{}, 0) == 0);
    Layout none;
    none.lines.clear();
    none.indents.clear();
    CHECK_THROWS_AS(layout_cost(LinearFactory(6), none, 0), std::invalid_argument);
  }

  TEST_CASE("layout cost agrees with per-character pricing") {
    SplitMix64 rng(17);
    for (int k = 0; k < 500; ++k) {
      Layout l;
      l.lines.clear();
      l.indents.clear();
      const auto n = rng.between(1, 5);
      for (std::uint64_t j = 0; j < n; ++j) {
        const std::size_t indent = j == 0 ? 0 : rng.below(6);
        l.lines.push_back(std::string(indent, ' ') + std::string(rng.below(12), 'x'));
        l.indents.push_back(indent);
      }
      const std::size_t c = rng.below(10);
      for (std::size_t w : {2, 6, 12}) {
        CHECK(layout_cost(LinearFactory(w), l, c) == per_character_cost(LinearFactory(w), l, c));
        CHECK(layout_cost(QuadraticFactory(w), l, c) == per_character_cost(QuadraticFactory(w), l, c));
        CHECK(layout_cost(MaxOverflowFactory(w), l, c) == per_character_cost(MaxOverflowFactory(w), l, c));
        CHECK(layout_cost(LinearFactory(w), l, c).height == static_cast<std::int64_t>(n - 1));
      }
    }
  }

  TEST_CASE("order is total and text splits on samples") {
    SplitMix64 rng(19);
    LinearFactory lin(6);
    QuadraticFactory quad(6);
    MaxOverflowFactory mx(6);
    std::vector<OH> qs;
    std::vector<std::int64_t> ms;
    for (int k = 0; k < 60; ++k) {
      const std::size_t c = rng.below(13);
      const std::size_t l1 = rng.below(13);
      const std::size_t l2 = rng.below(13);
      CHECK(lin.text_cost(c, l1 + l2) == lin.add(lin.text_cost(c, l1), lin.text_cost(c + l1, l2)));
      CHECK(quad.text_cost(c, l1 + l2) == quad.add(quad.text_cost(c, l1), quad.text_cost(c + l1, l2)));
      CHECK(mx.text_cost(c, l1 + l2) == mx.add(mx.text_cost(c, l1), mx.text_cost(c + l1, l2)));
      qs.push_back(quad.add(quad.text_cost(c, l1), quad.nl_cost(l2)));
      ms.push_back(mx.text_cost(c, l1));
    }
    for (const auto& a : qs) {
      for (const auto& b : qs) {
        CHECK((quad.le(a, b) || quad.le(b, a)));
        if (quad.le(a, b) && quad.le(b, a)) CHECK(a == b);
      }
    }
    for (auto a : ms) {
      for (auto b : ms) CHECK((mx.le(a, b) || mx.le(b, a)));
    }
  }

  TEST_CASE("validity checker") {
    for (std::uint64_t seed : {0, 1, 2}) {
      CHECK(check_factory_validity(LinearFactory(6), 2000, seed).valid);
      CHECK(check_factory_validity(QuadraticFactory(6), 2000, seed).valid);
      CHECK(check_factory_validity(MaxOverflowFactory(6), 2000, seed).valid);
    }
    const FactoryReport bad = check_factory_validity(InvalidMaxLexFactory(6), 10000, 0);
    CHECK_FALSE(bad.valid);
    CHECK(bad.contract == "translation invariance");
    CHECK(bad.trials_run <= 10000);
    CHECK_FALSE(bad.witness.empty());
    CHECK_THROWS_AS(check_factory_validity(QuadraticFactory(6), 0, 0), std::invalid_argument);
  }

  TEST_CASE("the max-lex counterexample") {
    InvalidMaxLexFactory f(6);
    CHECK(f.le({0, 1}, {1, 0}));
    CHECK(f.le({2, 0}, {2, 0}));
    CHECK_FALSE(f.le(f.add({0, 1}, {2, 0}), f.add({1, 0}, {2, 0})));
  }

  TEST_CASE("checker is deterministic in its seed") {
    const auto a = check_factory_validity(InvalidMaxLexFactory(6), 10000, 5);
    const auto b = check_factory_validity(InvalidMaxLexFactory(6), 10000, 5);
    CHECK(a.trials_run == b.trials_run);
    CHECK(a.witness == b.witness);
  }
}
