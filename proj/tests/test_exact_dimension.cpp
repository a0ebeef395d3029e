#include <gtest/gtest.h>

#include <array>

#include "posetdim/divisibility.hpp"
#include "posetdim/error.hpp"
#include "posetdim/exact_dimension.hpp"
#include "support/oracles.hpp"

using namespace posetdim;

namespace {

void expect_certified(const Poset& p, const DimensionResult& r) {
  ASSERT_TRUE(r.dimension);
  ASSERT_EQ(r.realiser.size(), static_cast<std::size_t>(*r.dimension));
  EXPECT_TRUE(is_realiser(p, r.realiser).ok);
}

}  // namespace

TEST(ExactDimension, SmallFamilies) {
  EXPECT_EQ(exact_dimension(chain(6), 4).dimension, 1);
  EXPECT_EQ(exact_dimension(antichain(1), 4).dimension, 1);
  EXPECT_EQ(exact_dimension(Poset::from_predicate({}, [](auto, auto) { return false; }), 4)
                .dimension,
            1);
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto r = exact_dimension(antichain(k), 4);
    EXPECT_EQ(r.dimension, 2);
    expect_certified(antichain(k), r);
  }
}

TEST(ExactDimension, D6IsTwo) {
  const std::vector<std::uint64_t> values{1, 2, 3, 4, 5, 6};
  const Poset p = build_divisibility_poset(values);
  const auto r = exact_dimension(p, 4);
  EXPECT_EQ(r.dimension, 2);
  expect_certified(p, r);
}

TEST(ExactDimension, HypercubeDimensionEqualsN) {
  for (int n = 1; n <= 4; ++n) {
    const Poset q = hypercube(n);
    const auto r = exact_dimension(q, 6);
    EXPECT_EQ(r.dimension, n) << "n = " << n;
    expect_certified(q, r);
  }
}

TEST(ExactDimension, StandardExampleNeedsN) {
  // Minimal elements a_i below every b_j with j != i.
  for (std::size_t n = 3; n <= 5; ++n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) ids.push_back("b" + std::to_string(i));
    const Poset s = Poset::from_predicate(
        ids, [n](std::size_t x, std::size_t y) { return x < n && y >= n && y - n != x; });
    EXPECT_EQ(exact_dimension(s, 6).dimension, static_cast<int>(n));
  }
}

TEST(ExactDimension, MaxDCutoff) {
  const auto r = exact_dimension(hypercube(4), 3);
  EXPECT_FALSE(r.dimension);
  EXPECT_TRUE(r.realiser.empty());
}

TEST(ExactDimension, CapsAreEnforced) {
  Caps caps;
  caps.exact_elements = 5;
  EXPECT_THROW(exact_dimension(hypercube(3), 4, caps), CapExceeded);
}

TEST(ExactDimension, MatchesBruteForceOnRandomPosets) {
  Rng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const Poset p = oracle::to_poset(oracle::random_order(rng, n, 1 + rng.below(2), 4));
    const auto r = exact_dimension(p, 4);
    ASSERT_EQ(r.dimension.value_or(-1), oracle::brute_dimension(p, 4)) << "trial " << trial;
    expect_certified(p, r);
  }
}

TEST(ExactDimension, DisjointUnionIsMaxWithTwo) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Poset a = oracle::to_poset(oracle::random_order(rng, 1 + rng.below(5), 1, 2));
    const Poset b = oracle::to_poset(oracle::random_order(rng, 1 + rng.below(5), 1, 2));
    const int da = *exact_dimension(a, 4).dimension;
    const int db = *exact_dimension(b, 4).dimension;
    EXPECT_EQ(exact_dimension(disjoint_union(a, b), 4).dimension, std::max({da, db, 2}));
  }
}

TEST(ExactDimension, ReversibilityAgreesWithExtensionSearch) {
  const Poset p = hypercube(3);
  const auto crit = critical_pairs(p);
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ElementPair> pick;
    for (const auto& c : crit)
      if (rng.below(4) == 0) pick.push_back(c);
    const bool rev = is_reversible(p, pick);
    const auto ext = reversing_extension(p, pick);
    EXPECT_EQ(rev, ext.has_value());
    if (ext) {
      EXPECT_TRUE(ext->is_extension_of(p));
      for (const auto& [x, y] : pick) EXPECT_GT(ext->rank(x), ext->rank(y));
    }
  }
  const std::array comparable{ElementPair{0, 1}};
  EXPECT_THROW(is_reversible(p, comparable), PreconditionError);
}

TEST(ExactDimension, LayerCollapseSmall) {
  for (int n = 3; n <= 4; ++n)
    for (int k = 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        const std::array two{k, l};
        std::vector<int> all;
        for (int i = k; i <= l; ++i) all.push_back(i);
        EXPECT_EQ(exact_dimension(hypercube_layers(n, two), 6).dimension,
                  exact_dimension(hypercube_layers(n, all), 6).dimension)
            << n << " " << k << " " << l;
      }
}
