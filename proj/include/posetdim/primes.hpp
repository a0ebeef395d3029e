#pragma once

#include <cstdint>
#include <vector>

#include "posetdim/caps.hpp"
#include "posetdim/numeric.hpp"

namespace posetdim {

/// Primes p <= x by the sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(double x, const Caps& caps = {});
std::vector<std::uint64_t> primes_up_to(const cpp_rational& x,
                                        const Caps& caps = {});
/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count,
                                        const Caps& caps = {});

/// Chebyshev theta(x) = sum of log p over primes p <= x.
HighFloat theta(double x, const Caps& caps = {});
/// Product of the given primes; theta is its logarithm.
cpp_int product_of(const std::vector<std::uint64_t>& primes);

}  // namespace posetdim
