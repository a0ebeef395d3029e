#include "posetdim/good_function.hpp"

#include <array>
#include <sstream>

#include "posetdim/combinations.hpp"
#include "posetdim/error.hpp"
#include "posetdim/rng.hpp"

namespace posetdim {

namespace {

void check_params(const GoodFunctionParams& p) {
  if (p.a < 1 || p.b < 1 || p.r < 1 || p.t < 1 || p.n < 1) {
    throw PreconditionError("good function parameters must be positive");
  }
  if (!(p.r < p.b && p.b <= p.n && p.r < p.a)) {
    std::ostringstream msg;
    msg << "good function needs r < b <= n and r < a (a=" << p.a << ", b=" << p.b
        << ", r=" << p.r << ", n=" << p.n << ")";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

GoodFunction::GoodFunction(GoodFunctionParams params, std::vector<int> table)
    : params_(params), table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(params_.n) * params_.t) {
    throw PreconditionError("good function table has the wrong size");
  }
  for (const int v : table_) {
    if (v < 0 || v >= params_.a) throw PreconditionError("good function value out of range");
  }
}

PartMask GoodFunction::part(int alpha, int tau) const {
  PartMask mask(static_cast<std::size_t>(params_.n), 0);
  for (int i = 0; i < params_.n; ++i) mask[i] = (*this)(i, tau) == alpha;
  return mask;
}

HighFloat good_function_condition(const GoodFunctionParams& p) {
  check_params(p);
  const HighFloat choose(binomial(static_cast<std::uint64_t>(p.n), static_cast<std::uint64_t>(p.b)));
  const HighFloat rt = HighFloat(p.r) * p.t;
  const HighFloat ratio = HighFloat(p.r) / p.a;
  return choose * exp(rt) * pow(ratio, HighFloat(p.b - p.r) * p.t);
}

cpp_int goodness_cases(const GoodFunctionParams& p) {
  return binomial(static_cast<std::uint64_t>(p.n), static_cast<std::uint64_t>(p.b)) * p.t;
}

std::optional<std::vector<int>> goodness_witness(const GoodFunction& f,
                                                 const Caps& caps) {
  const auto& p = f.params();
  check_params(p);
  if (p.n > 64 || goodness_cases(p) > caps.verification_cases) {
    throw CapExceeded("goodness check needs more than " +
                      std::to_string(caps.verification_cases) + " cases");
  }
  std::optional<std::vector<int>> witness;
  std::vector<char> seen(static_cast<std::size_t>(p.a), 0);
  for_each_combination(p.n, p.b, [&](const std::vector<int>& x) {
    for (int tau = 0; tau < p.t; ++tau) {
      std::fill(seen.begin(), seen.end(), 0);
      int parts = 0;
      for (const int i : x) {
        const int alpha = f(i, tau);
        if (!seen[alpha]) {
          seen[alpha] = 1;
          if (++parts > p.r) return true;  // X is split finely enough
        }
      }
    }
    witness = x;
    return false;
  });
  return witness;
}

bool is_good(const GoodFunction& f, const Caps& caps) {
  return !goodness_witness(f, caps).has_value();
}

GoodFunctionSample sample_good_function(const GoodFunctionParams& p,
                                        std::uint64_t seed, const Caps& caps) {
  check_params(p);
  const HighFloat condition = good_function_condition(p);
  const bool verifiable = p.n <= 64 && goodness_cases(p) <= caps.verification_cases;
  Rng rng(seed);
  for (int attempt = 1; attempt <= caps.retry_limit; ++attempt) {
    std::vector<int> table(static_cast<std::size_t>(p.n) * p.t);
    for (auto& v : table) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.a)));
    GoodFunction f(p, std::move(table));
    if (!verifiable) {
      return {std::move(f), attempt, condition, condition < 1};
    }
    if (is_good(f, caps)) {
      f.verified = true;
      return {std::move(f), attempt, condition, condition < 1};
    }
  }
  throw RetryLimitExceeded("no good function found in " +
                           std::to_string(caps.retry_limit) +
                           " samples; parameters are likely infeasible");
}

nlohmann::json to_json(const GoodFunctionSample& s) {
  const auto& p = s.function.params();
  return {{"a", p.a},
          {"b", p.b},
          {"r", p.r},
          {"t", p.t},
          {"n", p.n},
          {"verified", s.function.verified},
          {"attempts", s.attempts},
          {"condition", s.condition.convert_to<double>()},
          {"condition_below_one", s.condition_holds},
          {"table", s.function.table()}};
}

}  // namespace posetdim
