#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/components.hpp"
#include "posetdim/numeric.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// The integers m with N/kappa <= m <= N.
struct IntervalSpec {
  std::uint64_t N = 1;
  cpp_rational kappa = 2;

  /// Throws PreconditionError unless N >= 1 and kappa > 1.
  void validate() const;
  std::uint64_t lower() const;  // ceil(N / kappa)
  nlohmann::json to_json() const;
};

/// Ascending integers of the interval; checked against the interval cap.
std::vector<std::uint64_t> interval_integers(const IntervalSpec& spec, const Caps& caps = {});

/// Divisibility order on the given positive integers; ids are decimal.
Poset build_divisibility_poset(std::span<const std::uint64_t> values, const Caps& caps = {});

struct IntegerDecomposition {
  IntervalSpec spec;
  std::vector<std::uint64_t> values;        // element index -> integer
  std::vector<std::uint64_t> small_primes;  // p <= kappa
  std::vector<std::uint64_t> keys;          // component M, ascending
  Decomposition decomposition;

  bool divides(std::size_t a, std::size_t b) const { return values[b] % values[a] == 0; }
};

/// Splits the interval by the part M free of primes <= kappa. Each
/// component maps Mq to the exponent vector of q over the small primes, with
/// weights log p and bounds [log(N/(kappa M)), log(N/M)].
IntegerDecomposition decompose_interval(const IntervalSpec& spec, const Caps& caps = {});

/// No element divides an element of another component (full check over
/// all multiples).
PartitionVerdict check_cross_component(const IntegerDecomposition& d);

IsoVerdict component_iso_check(const IntegerDecomposition& d, std::size_t component,
                               const Caps& caps = {});

struct DecompositionCheck {
  PartitionVerdict partition;
  PartitionVerdict cross;
  std::size_t iso_checked = 0;
  std::optional<std::size_t> iso_failed_component;
  IsoVerdict iso;

  bool ok() const { return partition.ok && cross.ok && !iso_failed_component; }
};

/// Partition, cross-component and per-component isomorphism checks.
DecompositionCheck verify_decomposition(const IntegerDecomposition& d, const Caps& caps = {});

struct IntervalBound {
  cpp_rational kappa;
  std::size_t pi = 0;
  std::size_t pi_bound = 0;         // max(pi(kappa), 2)
  std::optional<HighFloat> theorem;  // 688 (log k)^3 / (log log k)^2, kappa >= 3
  HighFloat minimum;
};

IntervalBound dimension_bound_interval(const cpp_rational& kappa, const Caps& caps = {});

struct AppendixAReport {
  cpp_rational kappa;
  HighFloat r;
  std::size_t floor_r = 0;
  std::uint64_t prime = 0;  // p_floor(r)
  cpp_int primorial;        // product of the first floor(r) primes
  HighFloat theta;          // log of the primorial
  HighFloat two_log_kappa;
  bool holds = false;       // primorial >= kappa^2, exact
  HighFloat robin;          // floor_r (log floor_r + log log floor_r - 1.076869)
  bool robin_holds = false;
  /// The same sum truncated to the pi(kappa) small primes.
  std::size_t pi = 0;
  HighFloat truncated_m;
  bool truncated_holds = false;

  bool ok() const { return holds && robin_holds; }
};

/// Requires kappa >= 3.
AppendixAReport verify_appendix_a(const cpp_rational& kappa, const Caps& caps = {});

struct IntervalRealiser {
  IntegerDecomposition decomposition;
  MergedRealiser merged;
  IntervalBound bound;
  std::optional<Poset> poset;
  std::optional<RealiserVerdict> certification;
  /// ceil(43 r^2 log n) + 1, or absent without the theorem route.
  std::optional<std::int64_t> theorem_bound_merged;

  std::size_t size() const { return merged.size(); }
};

IntervalRealiser build_interval_realiser(const IntervalSpec& spec, std::uint64_t seed,
                                         const Caps& caps = {});

nlohmann::json to_json(const IntervalBound& b);
nlohmann::json to_json(const AppendixAReport& r);
nlohmann::json to_json(const DecompositionCheck& c, const IntegerDecomposition& d);
nlohmann::json to_json(const IntervalRealiser& r);

}  // namespace posetdim
