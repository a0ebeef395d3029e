#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace posetdim {

/// Work and size limits. Exceeding any of them raises CapExceeded rather
/// than truncating silently.
struct Caps {
  // Dense relation matrix cells (|P|^2).
  std::uint64_t relation_cells = 25'000'000;
  // Exact dimension search.
  std::size_t exact_elements = 20;
  std::size_t exact_critical_pairs = 120;
  // Enumeration of weighted multiset posets.
  std::size_t multiset_elements = 50'000;
  // Exhaustive coverage / goodness checks.
  std::uint64_t verification_cases = 10'000'000;
  // Integers in a divisibility interval.
  std::uint64_t interval_integers = 100'000;
  std::uint64_t sieve_limit = 100'000'000;
  // Monic polynomials tested during irreducible enumeration.
  std::uint64_t poly_enumeration = 1'000'000;
  // Resampling budget of randomized constructions.
  int retry_limit = 64;
};

/// Reads a caps override file. Keys match the field names; absent keys keep
/// their defaults.
Caps load_caps(const std::string& path);

nlohmann::json caps_to_json(const Caps& caps);

}  // namespace posetdim
