#include "posetdim/numeric.hpp"

#include <cctype>

#include <boost/multiprecision/number.hpp>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InputError("bad number '" + std::string(whole) + "'");
  cpp_int v = 0;
  for (const char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("bad number '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

cpp_rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  cpp_rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), whole);
    const cpp_int den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw InputError("zero denominator in '" + std::string(whole) + "'");
    value = cpp_rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      exponent = static_cast<long>(parse_integer(exp_text, whole));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
      throw InputError("bad number '" + std::string(whole) + "'");
    }
    cpp_int num = int_part.empty() ? cpp_int(0) : parse_integer(int_part, whole);
    if (!frac_part.empty()) num = num * pow10(static_cast<long>(frac_part.size())) + parse_integer(frac_part, whole);
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      value = cpp_rational(num * pow10(exponent));
    } else {
      value = cpp_rational(num, pow10(-exponent));
    }
  }
  return negative ? cpp_rational(-value) : value;
}

std::string to_string(const cpp_rational& q) {
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

HighFloat to_high(const cpp_rational& q) {
  return HighFloat(boost::multiprecision::numerator(q)) /
         HighFloat(boost::multiprecision::denominator(q));
}

double to_double(const cpp_rational& q) { return to_high(q).convert_to<double>(); }

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
  cpp_int q = a / b;  // truncates toward zero
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

cpp_int floor_of(const cpp_rational& q) {
  return floor_div(boost::multiprecision::numerator(q),
                   boost::multiprecision::denominator(q));
}

cpp_int ceil_of(const cpp_rational& q) { return -floor_of(-q); }

cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

std::int64_t ceil_int(const HighFloat& x) {
  return boost::multiprecision::ceil(x).convert_to<std::int64_t>();
}

}  // namespace posetdim
