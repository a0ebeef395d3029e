#include "posetdim/divisibility.hpp"

#include <algorithm>
#include <map>

#include "posetdim/error.hpp"
#include "posetdim/primes.hpp"

namespace posetdim {

void IntervalSpec::validate() const {
  if (N < 1) throw PreconditionError("N must be positive");
  if (kappa <= 1) throw PreconditionError("kappa must exceed 1");
}

std::uint64_t IntervalSpec::lower() const {
  const cpp_int lo = ceil_of(cpp_rational(cpp_int(N)) / kappa);
  return std::max<std::uint64_t>(1, lo.convert_to<std::uint64_t>());
}

nlohmann::json IntervalSpec::to_json() const {
  return {{"N", N}, {"kappa", to_string(kappa)}};
}

std::vector<std::uint64_t> interval_integers(const IntervalSpec& spec, const Caps& caps) {
  spec.validate();
  const std::uint64_t lo = spec.lower();
  if (lo > spec.N) return {};
  if (spec.N - lo + 1 > caps.interval_integers) {
    throw CapExceeded("interval has " + std::to_string(spec.N - lo + 1) +
                      " integers, cap is " + std::to_string(caps.interval_integers));
  }
  std::vector<std::uint64_t> out;
  out.reserve(spec.N - lo + 1);
  for (std::uint64_t m = lo; m <= spec.N; ++m) out.push_back(m);
  return out;
}

Poset build_divisibility_poset(std::span<const std::uint64_t> values, const Caps& caps) {
  std::vector<std::string> ids;
  ids.reserve(values.size());
  for (const auto v : values) {
    if (v == 0) throw PreconditionError("divisibility poset needs positive integers");
    ids.push_back(std::to_string(v));
  }
  return Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] && values[b] % values[a] == 0;
      },
      caps);
}

IntegerDecomposition decompose_interval(const IntervalSpec& spec, const Caps& caps) {
  IntegerDecomposition out;
  out.spec = spec;
  out.values = interval_integers(spec, caps);
  out.small_primes = primes_up_to(spec.kappa, caps);
  const int n = static_cast<int>(out.small_primes.size());

  std::map<std::uint64_t, Component> groups;
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    std::uint64_t rest = out.values[idx];
    Multiset image(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto p = out.small_primes[i];
      while (rest % p == 0) {
        rest /= p;
        ++image.x[i];
      }
    }
    auto& c = groups[rest];
    c.members.push_back(idx);
    c.images.push_back(std::move(image));
  }

  auto& d = out.decomposition;
  d.weights = std::make_shared<const WeightVector>(WeightVector::log_primes(n));
  d.width = SizeValue::log_of(spec.kappa);
  const cpp_rational big_n{cpp_int(spec.N)};
  for (auto& [key, c] : groups) {
    c.key = std::to_string(key);
    const cpp_rational m{cpp_int(key)};
    c.interval = {SizeValue::log_of(big_n / (spec.kappa * m)), SizeValue::log_of(big_n / m)};
    out.keys.push_back(key);
    d.components.push_back(std::move(c));
  }
  d.ids.reserve(out.values.size());
  for (const auto v : out.values) d.ids.push_back(std::to_string(v));
  return out;
}

PartitionVerdict check_cross_component(const IntegerDecomposition& d) {
  const auto owner = component_of(d.decomposition);
  if (d.values.empty()) return {};
  const std::uint64_t lo = d.values.front();
  const std::uint64_t hi = d.values.back();
  for (std::size_t a = 0; a < d.values.size(); ++a) {
    const std::uint64_t x = d.values[a];
    for (std::uint64_t y = 2 * x; y <= hi; y += x) {
      const std::size_t b = static_cast<std::size_t>(y - lo);
      if (owner[a] != owner[b]) {
        return {false, std::to_string(x) + " divides " + std::to_string(y) + " across components",
                ElementPair{a, b}};
      }
    }
  }
  return {};
}

IsoVerdict component_iso_check(const IntegerDecomposition& d, std::size_t component,
                               const Caps& caps) {
  const auto& c = d.decomposition.components.at(component);
  // Each member must equal M times its image.
  const std::uint64_t key = d.keys.at(component);
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    cpp_int value = key;
    for (std::size_t p = 0; p < d.small_primes.size(); ++p) {
      for (std::uint32_t e = 0; e < c.images[i].x[p]; ++e) value *= d.small_primes[p];
    }
    if (value != d.values[c.members[i]]) {
      return {false, "member is not M times its image", std::pair{i, i}};
    }
  }
  return component_iso_check(
      c, *d.decomposition.weights,
      [&](std::size_t a, std::size_t b) { return d.divides(a, b); }, caps);
}

DecompositionCheck verify_decomposition(const IntegerDecomposition& d, const Caps& caps) {
  DecompositionCheck out;
  out.partition = check_partition(d.decomposition);
  if (!out.partition.ok) return out;
  out.cross = check_cross_component(d);
  for (std::size_t c = 0; c < d.decomposition.components.size(); ++c) {
    auto v = component_iso_check(d, c, caps);
    ++out.iso_checked;
    if (!v.ok) {
      out.iso_failed_component = c;
      out.iso = std::move(v);
      break;
    }
  }
  return out;
}

IntervalBound dimension_bound_interval(const cpp_rational& kappa, const Caps& caps) {
  if (kappa <= 1) throw PreconditionError("kappa must exceed 1");
  IntervalBound b;
  b.kappa = kappa;
  b.pi = primes_up_to(kappa, caps).size();
  b.pi_bound = std::max<std::size_t>(b.pi, 2);
  b.minimum = HighFloat(b.pi_bound);
  if (kappa >= 3) {
    const HighFloat lk = log(to_high(kappa));
    const HighFloat llk = log(lk);
    b.theorem = 688 * lk * lk * lk / (llk * llk);
    b.minimum = std::min(b.minimum, *b.theorem);
  }
  return b;
}

AppendixAReport verify_appendix_a(const cpp_rational& kappa, const Caps& caps) {
  if (kappa < 3) throw PreconditionError("the appendix bound needs kappa >= 3");
  AppendixAReport a;
  a.kappa = kappa;
  const HighFloat lk = log(to_high(kappa));
  a.r = 4 * lk / log(lk);
  a.floor_r = static_cast<std::size_t>(floor(a.r).convert_to<std::uint64_t>());
  const auto primes = first_primes(a.floor_r, caps);
  a.prime = primes.empty() ? 0 : primes.back();
  a.primorial = product_of(primes);
  for (const auto p : primes) a.theta += log(HighFloat(p));
  a.two_log_kappa = 2 * lk;
  // primorial >= (num/den)^2 in integers.
  const cpp_int num = numerator(kappa);
  const cpp_int den = denominator(kappa);
  a.holds = a.primorial * den * den >= num * num;
  if (a.floor_r >= 2) {
    const HighFloat m(a.floor_r);
    a.robin = m * (log(m) + log(log(m)) - HighFloat("1.076869"));
    a.robin_holds = a.theta >= a.robin;
  }
  a.pi = primes_up_to(kappa, caps).size();
  const WeightVector truncated = WeightVector::log_primes(static_cast<int>(a.pi));
  const PrefixSum m = m_of(truncated, a.r.convert_to<double>());
  a.truncated_m = m.value.high();
  a.truncated_holds = m.value >= SizeValue::log_of(kappa * kappa);
  return a;
}

IntervalRealiser build_interval_realiser(const IntervalSpec& spec, std::uint64_t seed,
                                         const Caps& caps) {
  IntervalRealiser out{decompose_interval(spec, caps), {}, {}, {}, {}, {}};
  out.merged = build_merged_realiser(out.decomposition.decomposition, seed, caps);
  out.bound = dimension_bound_interval(spec.kappa, caps);
  if (out.merged.plan) out.theorem_bound_merged = out.merged.plan->bound_limit() + 1;
  try {
    out.poset = build_divisibility_poset(out.decomposition.values, caps);
  } catch (const CapExceeded&) {
    return out;
  }
  out.certification = is_realiser(*out.poset, out.merged.extensions);
  return out;
}

nlohmann::json to_json(const IntervalBound& b) {
  nlohmann::json j = {{"kappa", to_string(b.kappa)},
                      {"pi_kappa", b.pi},
                      {"pi_bound", b.pi_bound},
                      {"minimum", b.minimum.convert_to<double>()}};
  j["theorem_bound"] = b.theorem ? nlohmann::json(b.theorem->convert_to<double>())
                                 : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const AppendixAReport& r) {
  return {{"kappa", to_string(r.kappa)},
          {"r", r.r.convert_to<double>()},
          {"floor_r", r.floor_r},
          {"p_floor_r", r.prime},
          {"primorial", r.primorial.str()},
          {"theta", r.theta.str(25)},
          {"two_log_kappa", r.two_log_kappa.str(25)},
          {"holds", r.holds},
          {"robin_bound", r.robin.str(25)},
          {"robin_holds", r.robin_holds},
          {"pi_kappa", r.pi},
          {"truncated_m", r.truncated_m.str(25)},
          {"truncated_holds", r.truncated_holds},
          {"ok", r.ok()}};
}

nlohmann::json to_json(const DecompositionCheck& c, const IntegerDecomposition& d) {
  auto pair_ids = [&](const std::optional<ElementPair>& w) {
    if (!w) return nlohmann::json(nullptr);
    return nlohmann::json{d.values[w->first], d.values[w->second]};
  };
  nlohmann::json j = {{"partition", c.partition.ok},
                      {"cross_component_incomparable", c.cross.ok},
                      {"iso_checked", c.iso_checked},
                      {"ok", c.ok()}};
  if (!c.partition.ok) j["partition_failure"] = {{"reason", c.partition.reason}, {"witness", pair_ids(c.partition.witness)}};
  if (!c.cross.ok) j["cross_failure"] = {{"reason", c.cross.reason}, {"witness", pair_ids(c.cross.witness)}};
  if (c.iso_failed_component) {
    const auto& comp = d.decomposition.components[*c.iso_failed_component];
    nlohmann::json w = nullptr;
    if (c.iso.witness) {
      w = {d.values[comp.members[c.iso.witness->first]],
           d.values[comp.members[c.iso.witness->second]]};
    }
    j["iso_failure"] = {{"M", comp.key}, {"reason", c.iso.reason}, {"witness", w}};
  }
  return j;
}

nlohmann::json to_json(const IntervalRealiser& r) {
  nlohmann::json j = {{"interval", r.decomposition.spec.to_json()},
                      {"elements", r.decomposition.values.size()},
                      {"component_count", r.decomposition.decomposition.components.size()},
                      {"small_primes", r.decomposition.small_primes},
                      {"realiser", to_json(r.merged)},
                      {"size", r.size()},
                      {"bound", to_json(r.bound)},
                      {"prop_route_value", r.bound.pi + 1}};
  j["theorem_bound_merged"] =
      r.theorem_bound_merged ? nlohmann::json(*r.theorem_bound_merged) : nlohmann::json(nullptr);
  if (r.certification) {
    j["certified"] = r.certification->ok;
    if (r.certification->witness && r.poset) {
      j["witness"] = {r.poset->id(r.certification->witness->first),
                      r.poset->id(r.certification->witness->second)};
    }
  } else {
    j["certified"] = nullptr;
  }
  return j;
}

}  // namespace posetdim
