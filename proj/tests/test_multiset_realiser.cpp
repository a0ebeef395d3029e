#include <gtest/gtest.h>

#include <cmath>

#include "posetdim/error.hpp"
#include "posetdim/good_function.hpp"
#include "posetdim/multiset_realiser.hpp"
#include "support/oracles.hpp"

using namespace posetdim;

namespace {

SizeInterval lin(cpp_rational lo, cpp_rational hi) {
  return {SizeValue::linear(std::move(lo)), SizeValue::linear(std::move(hi))};
}

/// Brute coverage: for every x and every y_size-subset Y avoiding x, some
/// sigma ranks x above all of Y.
bool brute_covered(int n, int y_size, const std::vector<std::vector<int>>& sigmas) {
  for (int x = 0; x < n; ++x) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (mask >> x & 1U || std::popcount(mask) != y_size) continue;
      bool hit = false;
      for (const auto& s : sigmas) {
        std::vector<int> rank(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rank[s[i]] = i;
        bool above = true;
        for (int y = 0; y < n; ++y)
          if (mask >> y & 1U && rank[y] > rank[x]) above = false;
        if (above) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace

TEST(L1, TargetSizes) {
  // ceil((3r+1)^2 log n)
  EXPECT_EQ(build_L1(6, 1, 0).target, 29);
  EXPECT_EQ(build_L1(8, 1, 0).target, 34);
  EXPECT_EQ(build_L1(10, 2, 0).target, 113);
}

TEST(L1, RandomFamilyIsVerifiedCoverage) {
  for (const auto [n, r] : {std::pair{6, 1.0}, std::pair{8, 1.0}, std::pair{10, 2.0}}) {
    const auto l1 = build_L1(n, r, 0);
    EXPECT_FALSE(l1.small_n);
    EXPECT_TRUE(l1.verified);
    EXPECT_LE(l1.rounds, 3);
    EXPECT_EQ(static_cast<std::int64_t>(l1.family.size()), l1.target);
    EXPECT_EQ(l1.y_size, static_cast<int>(std::ceil(3 * r)));
    EXPECT_TRUE(brute_covered(n, l1.y_size, l1.sigmas));
    EXPECT_LT(l1.failure_bound, 1.0);
  }
}

TEST(L1, SmallGroundSetUsesRotations) {
  const auto l1 = build_L1(4, 1, 0);
  EXPECT_TRUE(l1.small_n);
  EXPECT_EQ(l1.family.size(), 4U);
  EXPECT_TRUE(brute_covered(4, 3, l1.sigmas));
}

TEST(L1, CoverageWitnessOnDeficientFamily) {
  const std::vector<std::vector<int>> one{{0, 1, 2, 3}};
  const auto w = l1_coverage_witness(4, 1, one);
  ASSERT_TRUE(w);
  EXPECT_FALSE(brute_covered(4, 1, one));
  // The witness really is uncovered: x sits below its Y in the only sigma.
  EXPECT_LT(w->x, w->y.front());
}

TEST(L1, SameSeedSameFamily) {
  EXPECT_EQ(build_L1(8, 1, 42).sigmas, build_L1(8, 1, 42).sigmas);
  EXPECT_NE(build_L1(8, 1, 42).sigmas, build_L1(8, 1, 43).sigmas);
}

TEST(L1, RejectsBadArguments) {
  EXPECT_THROW(build_L1(0, 1, 0), PreconditionError);
  EXPECT_THROW(build_L1(5, 0.5, 0), PreconditionError);
}

TEST(GoodFunction, ConditionAndSampling) {
  const int t = static_cast<int>(std::ceil(3 * std::log(8.0)));
  EXPECT_EQ(t, 7);
  const GoodFunctionParams p{6, 6, 2, t, 8};
  // C(8,6) e^{14} (1/3)^{28}
  const double expected = 28 * std::exp(14.0) * std::pow(1.0 / 3, 28);
  EXPECT_NEAR(good_function_condition(p).convert_to<double>(), expected, expected * 1e-9);
  EXPECT_LT(good_function_condition(p), 1);
  const auto s = sample_good_function(p, 0);
  EXPECT_TRUE(s.function.verified);
  EXPECT_LE(s.attempts, 5);
  EXPECT_TRUE(is_good(s.function));
}

TEST(GoodFunction, WitnessForBadTable) {
  // Everything in part 0: no subset is split at all.
  const GoodFunctionParams p{3, 3, 1, 2, 5};
  const GoodFunction f(p, std::vector<int>(10, 0));
  const auto w = goodness_witness(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 3U);
  EXPECT_FALSE(is_good(f));
  EXPECT_EQ(goodness_cases(p), 20);
}

TEST(GoodFunction, PartsPartitionGroundSet) {
  const auto s = sample_good_function({3, 3, 1, 4, 7}, 5);
  const auto& f = s.function;
  for (int tau = 0; tau < 4; ++tau) {
    std::vector<int> hits(7, 0);
    for (int alpha = 0; alpha < 3; ++alpha) {
      const auto part = f.part(alpha, tau);
      for (int i = 0; i < 7; ++i) hits[i] += part[i];
    }
    EXPECT_EQ(hits, std::vector<int>(7, 1));
  }
}

TEST(GoodFunction, RejectsBadParameters) {
  EXPECT_THROW(good_function_condition({2, 2, 2, 1, 4}), PreconditionError);
  EXPECT_THROW(good_function_condition({3, 9, 1, 1, 4}), PreconditionError);
}

TEST(L2, FamilySizes) {
  const auto s = sample_good_function({3, 3, 1, 7, 8}, 1);
  EXPECT_EQ(build_L2_unweighted(8, s.function).size(), 2U * 3 * 7);
  const auto v = std::make_shared<const WeightVector>(WeightVector::degrees({1, 1, 2, 2, 3, 3, 4, 4}));
  EXPECT_EQ(build_L2_weighted(v, s.function).size(), 3U * 3 * 7);
}

TEST(EffectiveR, LeastIntegerWithPrefixSum) {
  bool capped = true;
  const auto v = WeightVector::degrees({1, 1, 2, 3});
  EXPECT_EQ(effective_r(v, SizeValue::linear(2), &capped), 3);  // m = 1, 2, 4
  EXPECT_FALSE(capped);
  EXPECT_EQ(effective_r(v, SizeValue::linear(4), &capped), 4);
  EXPECT_TRUE(capped);
  const auto lp = WeightVector::log_primes(3);
  EXPECT_EQ(effective_r(lp, SizeValue::log_of(6), &capped), 3);  // 30 < 36
  EXPECT_TRUE(capped);
}

TEST(MultisetRealiser, UnweightedSmallInstance) {
  const auto m = build_realiser_multiset(WeightVector::ones(6), lin(1, 3), 0);
  EXPECT_EQ(m.plan.route, MultisetRoute::kUnweighted);
  EXPECT_EQ(m.plan.r, 2);
  EXPECT_TRUE(m.plan.l1.small_n);
  EXPECT_EQ(m.size(), 6U + 2 * 6 * 6);
  ASSERT_TRUE(m.certification);
  EXPECT_TRUE(m.certification->ok);
  EXPECT_EQ(m.plan.bound_limit(), 244);
  EXPECT_TRUE(m.within_bound());
}

TEST(MultisetRealiser, UnweightedRandomL1) {
  const auto m = build_realiser_multiset(WeightVector::ones(8), lin(1, 2), 3);
  EXPECT_EQ(m.plan.r, 1);
  EXPECT_EQ(m.plan.l1.family.size(), 34U);
  EXPECT_EQ(m.plan.l2.size(), 2U * 3 * 7);
  EXPECT_EQ(m.poset->elements.size(), 44U);
  EXPECT_TRUE(m.certification->ok);
  EXPECT_TRUE(m.within_bound());
}

TEST(MultisetRealiser, WeightedRandomL1) {
  const auto v = WeightVector::rationals({cpp_rational(1, 4), cpp_rational(1, 4), cpp_rational(1, 4),
                                          cpp_rational(1, 4), cpp_rational(3, 8), cpp_rational(3, 8),
                                          cpp_rational(1, 2)});
  const auto m = build_realiser_multiset(v, lin(1, cpp_rational(9, 8)), 0);
  EXPECT_EQ(m.plan.route, MultisetRoute::kWeighted);
  EXPECT_EQ(m.plan.r, 1);
  EXPECT_EQ(m.plan.l1.family.size(), 32U);
  EXPECT_EQ(m.plan.l2.size(), 3U * 3 * 6);
  EXPECT_TRUE(m.certification->ok);
  EXPECT_TRUE(m.plan.verified());
  EXPECT_TRUE(m.within_bound());
}

TEST(MultisetRealiser, WeightedSmallInstances) {
  const auto a = build_realiser_multiset(WeightVector::degrees({1, 1, 2, 3}), lin(2, 4), 0);
  EXPECT_EQ(a.plan.r, 3);
  EXPECT_EQ(a.size(), 4U);
  EXPECT_TRUE(a.certification->ok);
  const auto b = build_realiser_multiset(
      WeightVector::rationals({cpp_rational(1, 2), cpp_rational(1, 2), 1, 1, cpp_rational(3, 2)}),
      lin(1, 2), 0);
  EXPECT_EQ(b.plan.r, 3);
  EXPECT_TRUE(b.certification->ok);
  EXPECT_TRUE(b.within_bound());
}

TEST(MultisetRealiser, DroppingARotationBreaksIt) {
  const auto v = WeightVector::ones(3);
  const auto mp = enumerate_poset(v, lin(1, 2));
  auto fam = rotation_family(3, "rot");
  fam.orders.erase(fam.orders.begin());
  EXPECT_FALSE(is_realiser(mp.poset, linearize_family(fam, mp.poset, mp.elements)).ok);
}

TEST(MultisetRealiser, Deterministic) {
  const auto a = build_realiser_multiset(WeightVector::ones(8), lin(1, 2), 11);
  const auto b = build_realiser_multiset(WeightVector::ones(8), lin(1, 2), 11);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(MultisetRealiser, RandomSmallInstancesAreCertified) {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    std::vector<cpp_rational> w;
    for (int i = 0; i < n; ++i) w.emplace_back(1 + static_cast<int>(rng.below(4)), 2);
    const cpp_rational k(static_cast<int>(rng.below(4)), 2);
    const cpp_rational l = k + cpp_rational(1 + static_cast<int>(rng.below(3)), 2);
    const auto m = build_realiser_multiset(WeightVector::rationals(w), lin(k, l), trial);
    ASSERT_TRUE(m.certification);
    EXPECT_TRUE(m.certification->ok) << trial;
    EXPECT_TRUE(m.within_bound()) << trial;
  }
}

TEST(MultisetRealiser, RejectsEmptyWidth) {
  EXPECT_THROW(build_realiser_multiset(WeightVector::ones(3), lin(2, 2), 0), PreconditionError);
}
