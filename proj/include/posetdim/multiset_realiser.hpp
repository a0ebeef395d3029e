#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/good_function.hpp"
#include "posetdim/multiset.hpp"
#include "posetdim/multiset_orders.hpp"

namespace posetdim {

// ----- lexicographic family -----

struct CoverageWitness {
  int x = 0;
  std::vector<int> y;
};

/// Some x and |Y| = y_size with x not in Y such that no sigma places x above
/// all of Y, or nullopt when every such (x, Y) is covered.
std::optional<CoverageWitness> l1_coverage_witness(
    int n, int y_size, const std::vector<std::vector<int>>& sigmas,
    const Caps& caps = {});

struct L1Family {
  ExtensionFamily family;
  std::vector<std::vector<int>> sigmas;
  int n = 0;
  double r = 1;
  int y_size = 0;            // ceil(3r)
  std::int64_t target = 0;   // ceil((3r+1)^2 log n)
  bool small_n = false;      // n <= 3 ceil(r) + 1: rotations
  bool verified = false;
  int rounds = 0;
  /// Union bound on the probability a sampled family misses some (x, Y).
  double failure_bound = 0;
};

/// Lexicographic orders L_sigma such that every x sits above every
/// ceil(3r)-subset Y not containing x in some sigma. Random families are
/// resampled until exhaustive coverage verification passes.
L1Family build_L1(int n, double r, std::uint64_t seed, const Caps& caps = {});

// ----- part families -----

/// Family size 3at: for each (alpha, tau) the orders by v-size of the
/// restriction to R_{alpha,tau} (j = 0) and by the two eps-interval orders
/// (j = 1, 2). Each order is checked on sampled comparable pairs.
ExtensionFamily build_L2_weighted(std::shared_ptr<const WeightVector> v,
                                  const GoodFunction& f,
                                  std::uint64_t check_seed = 0);

/// Family size 2at: orders by size of the restriction with opposite
/// tie-breaks (M_1, M_2).
ExtensionFamily build_L2_unweighted(int n, const GoodFunction& f,
                                    std::uint64_t check_seed = 0);

/// Throws if some sampled S strictly inside T is not ordered below T.
void check_extension_on_samples(const MultisetOrder& order, int n,
                                std::uint64_t seed, int samples = 32);

// ----- combined construction -----

enum class MultisetRoute {
  kUnweighted,  // unit weights, integer bounds, r = l - k
  kWeighted,    // r from m(v, r) >= 2(l - k)
};

/// Least integer r in [1, n] with m(v, r) >= 2 * width; n when none exists
/// (`capped` is then set).
int effective_r(const WeightVector& v, const SizeValue& width, bool* capped);

struct MultisetFamilyPlan {
  MultisetRoute route = MultisetRoute::kWeighted;
  int n = 0;
  int r = 1;
  bool r_capped = false;
  std::string width;
  L1Family l1;
  std::optional<GoodFunctionSample> good_function;
  ExtensionFamily l2;
  ExtensionFamily family;  // L1 followed by L2
  /// 34 (l-k)^2 log n or 43 r^2 log n.
  HighFloat theorem_bound;
  /// The two-term bound with the floors and ceilings made explicit.
  std::int64_t ceiling_bound = 0;

  bool verified() const {
    return l1.verified && (!good_function || good_function->function.verified);
  }
  std::int64_t bound_limit() const;
};

/// Builds L1 and L2 for every interval of the given width. The orders depend
/// only on exponent vectors, so one plan serves every shifted interval.
MultisetFamilyPlan plan_multiset_family(const WeightVector& v,
                                        const SizeInterval& interval,
                                        std::uint64_t seed,
                                        const Caps& caps = {});

struct MultisetRealiser {
  MultisetFamilyPlan plan;
  SizeInterval interval;
  std::optional<MultisetPoset> poset;
  std::vector<LinearExtension> realiser;
  /// Absent when the poset is too large to enumerate.
  std::optional<RealiserVerdict> certification;

  std::size_t size() const { return plan.family.size(); }
  bool within_bound() const {
    return static_cast<std::int64_t>(size()) <= plan.bound_limit();
  }
};

/// L1 and L2 as a realiser of the weighted multiset poset on the interval,
/// certified with is_realiser whenever the poset can be enumerated.
MultisetRealiser build_realiser_multiset(const WeightVector& v,
                                         const SizeInterval& interval,
                                         std::uint64_t seed,
                                         const Caps& caps = {});

nlohmann::json to_json(const L1Family& l1);
nlohmann::json to_json(const MultisetFamilyPlan& plan);
nlohmann::json to_json(const MultisetRealiser& m);

}  // namespace posetdim
