#include "posetdim/primes.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/number.hpp>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

std::vector<std::uint64_t> sieve(std::uint64_t limit, const Caps& caps) {
  if (limit > caps.sieve_limit) {
    throw CapExceeded("sieve limit " + std::to_string(limit) + " exceeds cap " +
                      std::to_string(caps.sieve_limit));
  }
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(double x, const Caps& caps) {
  if (!(x >= 2)) return {};
  if (x > static_cast<double>(caps.sieve_limit)) {
    throw CapExceeded("sieve limit exceeds cap");
  }
  return sieve(static_cast<std::uint64_t>(std::floor(x)), caps);
}

std::vector<std::uint64_t> primes_up_to(const cpp_rational& x, const Caps& caps) {
  const cpp_int f = floor_of(x);
  if (f < 2) return {};
  if (f > caps.sieve_limit) throw CapExceeded("sieve limit exceeds cap");
  return sieve(f.convert_to<std::uint64_t>(), caps);
}

std::vector<std::uint64_t> first_primes(std::size_t count, const Caps& caps) {
  if (count == 0) return {};
  // p_m < m (log m + log log m) for m >= 6.
  const double m = static_cast<double>(count);
  std::uint64_t limit = 15;
  if (count >= 6) limit = static_cast<std::uint64_t>(m * (std::log(m) + std::log(std::log(m)))) + 1;
  auto primes = sieve(limit, caps);
  primes.resize(count);
  return primes;
}

HighFloat theta(double x, const Caps& caps) {
  HighFloat sum = 0;
  for (const auto p : primes_up_to(x, caps)) sum += log(HighFloat(p));
  return sum;
}

cpp_int product_of(const std::vector<std::uint64_t>& primes) {
  cpp_int r = 1;
  for (const auto p : primes) r *= p;
  return r;
}

}  // namespace posetdim
