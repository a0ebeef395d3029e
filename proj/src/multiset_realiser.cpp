#include "posetdim/multiset_realiser.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/multiprecision/number.hpp>

#include "posetdim/combinations.hpp"
#include "posetdim/error.hpp"
#include "posetdim/rng.hpp"

namespace posetdim {

namespace {

HighFloat log_n(int n) { return log(HighFloat(n)); }

int ceil3r(double r) { return static_cast<int>(std::ceil(3 * r - 1e-12)); }

std::int64_t l1_target(int n, double r) {
  const HighFloat base = HighFloat(3) * HighFloat(r) + 1;
  return ceil_int(base * base * log_n(n));
}

}  // namespace

// ----- L1 -----

std::optional<CoverageWitness> l1_coverage_witness(
    int n, int y_size, const std::vector<std::vector<int>>& sigmas,
    const Caps& caps) {
  const int s = y_size + 1;
  if (s > n) return std::nullopt;  // no (x, Y) exists
  if (n > 64) throw CapExceeded("coverage check supports n <= 64");
  if (binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)) * s >
      caps.verification_cases) {
    throw CapExceeded("coverage check exceeds verification cap");
  }
  // rank[k][i]: position of i in sigma k.
  std::vector<std::vector<int>> rank;
  for (const auto& sigma : sigmas) {
    std::vector<int> r(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) r[sigma[pos]] = pos;
    rank.push_back(std::move(r));
  }
  // For each s-subset Z, the set of sigma-maxima of Z must be all of Z.
  std::optional<CoverageWitness> witness;
  for_each_combination(n, s, [&](const std::vector<int>& z) {
    std::uint64_t tops = 0;
    for (const auto& r : rank) {
      int best = z[0];
      for (const int i : z) {
        if (r[i] > r[best]) best = i;
      }
      tops |= std::uint64_t{1} << best;
    }
    for (const int x : z) {
      if (!(tops >> x & 1U)) {
        CoverageWitness w{x, {}};
        for (const int y : z) {
          if (y != x) w.y.push_back(y);
        }
        witness = std::move(w);
        return false;
      }
    }
    return true;
  });
  return witness;
}

L1Family build_L1(int n, double r, std::uint64_t seed, const Caps& caps) {
  if (n < 1) throw PreconditionError("L1 needs n >= 1");
  if (!(r >= 1)) throw PreconditionError("L1 needs r >= 1");
  L1Family out;
  out.n = n;
  out.r = r;
  out.y_size = ceil3r(r);
  out.target = l1_target(n, r);
  const int r_ceil = static_cast<int>(std::ceil(r - 1e-12));
  if (n <= 3 * r_ceil + 1) {
    out.small_n = true;
    out.family = rotation_family(n, "L1");
    for (const auto& o : out.family.orders) {
      out.sigmas.push_back(static_cast<const LexOrder&>(*o).sigma());
    }
    out.verified = true;
    out.rounds = 0;
    return out;
  }
  const int s = out.y_size + 1;
  const HighFloat miss = pow(HighFloat(1) - HighFloat(1) / s, HighFloat(out.target));
  out.failure_bound =
      (HighFloat(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s))) * s * miss)
          .convert_to<double>();
  const bool verifiable =
      n <= 64 && binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)) * s <=
                     caps.verification_cases;
  Rng rng(seed);
  for (int round = 1; round <= caps.retry_limit; ++round) {
    std::vector<std::vector<int>> sigmas;
    sigmas.reserve(static_cast<std::size_t>(out.target));
    for (std::int64_t i = 0; i < out.target; ++i) sigmas.push_back(rng.permutation(n));
    out.rounds = round;
    if (verifiable && l1_coverage_witness(n, out.y_size, sigmas, caps)) continue;
    out.verified = verifiable;
    out.sigmas = std::move(sigmas);
    for (std::size_t i = 0; i < out.sigmas.size(); ++i) {
      out.family.orders.push_back(std::make_shared<LexOrder>(
          out.sigmas[i], nlohmann::json{{"family", "L1"}, {"index", i}}));
    }
    return out;
  }
  throw RetryLimitExceeded("L1 coverage failed in " + std::to_string(caps.retry_limit) +
                           " rounds");
}

// ----- L2 -----

void check_extension_on_samples(const MultisetOrder& order, int n,
                                std::uint64_t seed, int samples) {
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    Multiset s(static_cast<std::size_t>(n));
    for (auto& e : s.x) e = static_cast<std::uint32_t>(rng.below(3));
    Multiset t = s;
    const int extra = 1 + static_cast<int>(rng.below(3));
    for (int e = 0; e < extra; ++e) t.x[rng.below(static_cast<std::uint64_t>(n))] += 1;
    if (order.compare(s, t) >= 0 || order.compare(t, s) <= 0) {
      throw Error("order " + order.provenance().dump() + " places " + t.str() +
                  " below its subset " + s.str());
    }
  }
}

namespace {

void require_square(const GoodFunction& f, int n) {
  if (f.params().n != n) throw PreconditionError("good function is over a different n");
  if (f.params().a != f.params().b) throw PreconditionError("L2 needs a = b");
}

nlohmann::json l2_tag(int alpha, int tau, int j) {
  return {{"family", "L2"}, {"alpha", alpha}, {"tau", tau}, {"j", j}};
}

}  // namespace

ExtensionFamily build_L2_weighted(std::shared_ptr<const WeightVector> v,
                                  const GoodFunction& f, std::uint64_t check_seed) {
  const int n = v->size();
  require_square(f, n);
  ExtensionFamily out;
  const auto& p = f.params();
  for (int tau = 0; tau < p.t; ++tau) {
    for (int alpha = 0; alpha < p.a; ++alpha) {
      const PartMask part = f.part(alpha, tau);
      out.orders.push_back(std::make_shared<PartOrder>(v, part, PartRanking::kBySize, 0,
                                                       l2_tag(alpha, tau, 0)));
      out.orders.push_back(std::make_shared<PartOrder>(v, part, PartRanking::kIntervals, +1,
                                                       l2_tag(alpha, tau, 1)));
      out.orders.push_back(std::make_shared<PartOrder>(
          v, part, PartRanking::kShiftedIntervals, -1, l2_tag(alpha, tau, 2)));
    }
  }
  for (std::size_t i = 0; i < out.orders.size(); ++i) {
    check_extension_on_samples(*out.orders[i], n, derive_seed(check_seed, i));
  }
  return out;
}

ExtensionFamily build_L2_unweighted(int n, const GoodFunction& f,
                                    std::uint64_t check_seed) {
  require_square(f, n);
  const auto ones = std::make_shared<const WeightVector>(WeightVector::ones(n));
  ExtensionFamily out;
  const auto& p = f.params();
  for (int tau = 0; tau < p.t; ++tau) {
    for (int alpha = 0; alpha < p.a; ++alpha) {
      const PartMask part = f.part(alpha, tau);
      out.orders.push_back(std::make_shared<PartOrder>(ones, part, PartRanking::kBySize, +1,
                                                       l2_tag(alpha, tau, 1)));
      out.orders.push_back(std::make_shared<PartOrder>(ones, part, PartRanking::kBySize, -1,
                                                       l2_tag(alpha, tau, 2)));
    }
  }
  for (std::size_t i = 0; i < out.orders.size(); ++i) {
    check_extension_on_samples(*out.orders[i], n, derive_seed(check_seed, i));
  }
  return out;
}

// ----- combined -----

int effective_r(const WeightVector& v, const SizeValue& width, bool* capped) {
  const SizeValue need = width.doubled();
  const int n = v.size();
  for (int j = 1; j <= n; ++j) {
    if (m_of_count(v, static_cast<std::uint64_t>(j)).value >= need) {
      if (capped) *capped = false;
      return j;
    }
  }
  if (capped) *capped = true;
  return std::max(n, 1);
}

std::int64_t MultisetFamilyPlan::bound_limit() const {
  return std::max(ceil_int(theorem_bound), ceiling_bound);
}

namespace {

bool integral(const cpp_rational& q) { return boost::multiprecision::denominator(q) == 1; }

}  // namespace

MultisetFamilyPlan plan_multiset_family(const WeightVector& v,
                                        const SizeInterval& interval,
                                        std::uint64_t seed, const Caps& caps) {
  const int n = v.size();
  if (n < 1) throw PreconditionError("multiset realiser needs n >= 1");
  if (!(interval.lo < interval.hi)) {
    throw PreconditionError("multiset realiser needs k < l");
  }
  const SizeValue width = interval.width();
  MultisetFamilyPlan plan;
  plan.n = n;
  plan.width = width.str();
  const bool unweighted = v.all_ones() && integral(interval.lo.repr()) &&
                          integral(interval.hi.repr()) && interval.lo.repr() >= 0;
  if (unweighted) {
    plan.route = MultisetRoute::kUnweighted;
    plan.r = static_cast<int>(boost::multiprecision::numerator(width.repr()));
  } else {
    plan.route = MultisetRoute::kWeighted;
    plan.r = effective_r(v, width, &plan.r_capped);
  }
  const int r = plan.r;
  const int a = 3 * r;
  const int t = ceil_int(3 * log_n(n));

  plan.l1 = build_L1(n, r, derive_seed(seed, 1), caps);
  plan.family.append(plan.l1.family);

  // Pairs with more than 3r distinct elements in T \ S exist only if n > 3r.
  if (a <= n && t >= 1) {
    const GoodFunctionParams params{a, a, r, t, n};
    plan.good_function = sample_good_function(params, derive_seed(seed, 2), caps);
    const auto& f = plan.good_function->function;
    if (plan.route == MultisetRoute::kUnweighted) {
      plan.l2 = build_L2_unweighted(n, f, derive_seed(seed, 3));
    } else {
      plan.l2 = build_L2_weighted(std::make_shared<const WeightVector>(v), f,
                                  derive_seed(seed, 3));
    }
    plan.family.append(plan.l2);
  }

  const HighFloat ln = log_n(n);
  const int per_part = plan.route == MultisetRoute::kUnweighted ? 2 : 3;
  plan.theorem_bound = (plan.route == MultisetRoute::kUnweighted ? 34 : 43) *
                       HighFloat(r) * HighFloat(r) * ln;
  const std::int64_t l1_term = std::max<std::int64_t>(plan.l1.target, plan.l1.small_n ? n : 0);
  plan.ceiling_bound = l1_term + static_cast<std::int64_t>(per_part) * a * std::max(t, 0);
  return plan;
}

MultisetRealiser build_realiser_multiset(const WeightVector& v,
                                         const SizeInterval& interval,
                                         std::uint64_t seed, const Caps& caps) {
  MultisetRealiser out{plan_multiset_family(v, interval, seed, caps), interval, {}, {}, {}};
  try {
    out.poset = enumerate_poset(v, interval, caps);
  } catch (const CapExceeded&) {
    return out;
  }
  out.realiser = linearize_family(out.plan.family, out.poset->poset, out.poset->elements);
  out.certification = is_realiser(out.poset->poset, out.realiser);
  return out;
}

// ----- reports -----

nlohmann::json to_json(const L1Family& l1) {
  return {{"n", l1.n},
          {"r", l1.r},
          {"y_size", l1.y_size},
          {"size", l1.family.size()},
          {"target_size", l1.target},
          {"small_n_rotations", l1.small_n},
          {"verified", l1.verified},
          {"rounds", l1.rounds},
          {"failure_probability_bound", l1.failure_bound},
          {"sigmas", l1.sigmas}};
}

nlohmann::json to_json(const MultisetFamilyPlan& plan) {
  nlohmann::json j = {
      {"route", plan.route == MultisetRoute::kUnweighted ? "unweighted" : "weighted"},
      {"n", plan.n},
      {"width", plan.width},
      {"effective_r", plan.r},
      {"r_capped_at_n", plan.r_capped},
      {"l1", to_json(plan.l1)},
      {"l2_size", plan.l2.size()},
      {"family_size", plan.family.size()},
      {"theorem_bound", plan.theorem_bound.convert_to<double>()},
      {"theorem_bound_ceil", ceil_int(plan.theorem_bound)},
      {"ceiling_bound", plan.ceiling_bound},
      {"verified", plan.verified()},
  };
  j["l1"].erase("sigmas");
  if (plan.good_function) {
    j["good_function"] = to_json(*plan.good_function);
  } else {
    j["good_function"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const MultisetRealiser& m) {
  nlohmann::json j = to_json(m.plan);
  j["interval"] = {{"k", m.interval.lo.str()}, {"l", m.interval.hi.str()}};
  j["size"] = m.size();
  j["within_bound"] = m.within_bound();
  if (m.poset) {
    j["poset_size"] = m.poset->elements.size();
  } else {
    j["poset_size"] = nullptr;
  }
  if (m.certification) {
    j["certified"] = m.certification->ok;
    if (m.certification->witness && m.poset) {
      const auto [x, y] = *m.certification->witness;
      j["witness"] = {m.poset->elements[x].str(), m.poset->elements[y].str()};
    }
  } else {
    j["certified"] = nullptr;
  }
  return j;
}

}  // namespace posetdim
