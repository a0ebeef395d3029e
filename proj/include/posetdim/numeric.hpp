#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace posetdim {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
/// 50 decimal digits (~166 bits).
using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Accepts "7", "3/2", "-1/4", "2.5", "1e6".
cpp_rational parse_rational(std::string_view text);
std::string to_string(const cpp_rational& q);

HighFloat to_high(const cpp_rational& q);
double to_double(const cpp_rational& q);

/// floor(a / b) for b > 0.
cpp_int floor_div(const cpp_int& a, const cpp_int& b);
cpp_int ceil_of(const cpp_rational& q);
cpp_int floor_of(const cpp_rational& q);

cpp_int binomial(std::uint64_t n, std::uint64_t k);

/// Smallest integer >= x, computed in high precision.
std::int64_t ceil_int(const HighFloat& x);

}  // namespace posetdim
