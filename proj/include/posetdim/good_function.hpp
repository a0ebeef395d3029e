#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/multiset.hpp"
#include "posetdim/numeric.hpp"

namespace posetdim {

struct GoodFunctionParams {
  int a = 0;  // parts per partition
  int b = 0;  // subset size
  int r = 0;  // required parts exceed r
  int t = 0;  // number of partitions
  int n = 0;  // ground set size

  friend bool operator==(const GoodFunctionParams&, const GoodFunctionParams&) = default;
};

/// A sequence of t partitions of {0..n-1} into a labelled parts, stored as
/// the table f(i, tau) in [0, a). It is (a,b,r,t,n)-good when every b-subset
/// X has some tau with |f(X, tau)| > r.
class GoodFunction {
 public:
  GoodFunction(GoodFunctionParams params, std::vector<int> table);

  const GoodFunctionParams& params() const { return params_; }
  int operator()(int i, int tau) const { return table_[static_cast<std::size_t>(i) * params_.t + tau]; }
  /// R_{alpha,tau} as a membership mask.
  PartMask part(int alpha, int tau) const;
  const std::vector<int>& table() const { return table_; }

  /// Set when goodness was checked exhaustively and holds.
  bool verified = false;

 private:
  GoodFunctionParams params_;
  std::vector<int> table_;
};

/// C(n,b) e^{rt} (r/a)^{(b-r)t}; a value below 1 guarantees a good function
/// exists. Requires r < b <= n and r < a.
HighFloat good_function_condition(const GoodFunctionParams& p);

/// A b-subset split into at most r parts by every partition, or nullopt if
/// f is good. Throws CapExceeded when C(n,b)*t exceeds the verification cap.
std::optional<std::vector<int>> goodness_witness(const GoodFunction& f,
                                                 const Caps& caps = {});
bool is_good(const GoodFunction& f, const Caps& caps = {});

/// Number of subset checks an exhaustive goodness test needs.
cpp_int goodness_cases(const GoodFunctionParams& p);

struct GoodFunctionSample {
  GoodFunction function;
  int attempts = 0;
  HighFloat condition;
  bool condition_holds = false;  // condition < 1
};

/// Uniformly random tables, resampled until exhaustive verification passes.
/// When verification exceeds caps the first sample is returned unverified.
/// Throws RetryLimitExceeded after caps.retry_limit failed samples.
GoodFunctionSample sample_good_function(const GoodFunctionParams& p,
                                        std::uint64_t seed,
                                        const Caps& caps = {});

nlohmann::json to_json(const GoodFunctionSample& s);

}  // namespace posetdim
