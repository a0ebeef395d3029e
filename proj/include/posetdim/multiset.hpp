#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posetdim/caps.hpp"
#include "posetdim/numeric.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// Multiset over {0..n-1}, identified with its multiplicity vector.
struct Multiset {
  std::vector<std::uint32_t> x;

  Multiset() = default;
  explicit Multiset(std::size_t n) : x(n, 0) {}
  explicit Multiset(std::vector<std::uint32_t> exponents) : x(std::move(exponents)) {}

  std::size_t ambient() const { return x.size(); }
  /// Cardinality with multiplicity.
  std::uint64_t cardinality() const;
  bool subset_of(const Multiset& t) const;
  /// Elements with larger multiplicity here than in t.
  std::vector<int> support_minus(const Multiset& t) const;
  std::string str() const;  // "(2,0,1)"

  friend auto operator<=>(const Multiset&, const Multiset&) = default;
};

/// Part of the ground set, as a membership mask.
using PartMask = std::vector<char>;

enum class WeightKind {
  kLinear,     // entries are positive rationals
  kLogPrimes,  // entry i is log p_i
};

/// An exact v-size. For kLinear the value is repr(); for kLogPrimes it is
/// log(repr()), so sums become products and differences quotients.
class SizeValue {
 public:
  SizeValue() = default;
  static SizeValue linear(cpp_rational value) { return {WeightKind::kLinear, std::move(value)}; }
  /// log(value); value must be positive.
  static SizeValue log_of(cpp_rational value);

  WeightKind kind() const { return kind_; }
  const cpp_rational& repr() const { return repr_; }

  SizeValue plus(const SizeValue& o) const;
  SizeValue minus(const SizeValue& o) const;
  SizeValue doubled() const;

  double approx() const;
  HighFloat high() const;
  /// "7/2" or "log(12)".
  std::string str() const;

  /// Both operands must have the same kind.
  friend std::strong_ordering operator<=>(const SizeValue& a, const SizeValue& b);
  friend bool operator==(const SizeValue& a, const SizeValue& b) {
    return (a <=> b) == 0;
  }

 private:
  SizeValue(WeightKind kind, cpp_rational repr) : kind_(kind), repr_(std::move(repr)) {}
  WeightKind kind_ = WeightKind::kLinear;
  cpp_rational repr_ = 0;
};

struct SizeInterval {
  SizeValue lo;
  SizeValue hi;
  SizeValue width() const { return hi.minus(lo); }
  bool contains(const SizeValue& s) const { return lo <= s && s <= hi; }
};

/// Strictly positive weight vector with exact comparisons.
///
/// Internally every v-size is an integer "scaled size": for linear weights
/// the size times the common denominator of the entries, for log-prime
/// weights the product of prime powers. Order of scaled sizes equals order
/// of v-sizes in both cases.
class WeightVector {
 public:
  static WeightVector ones(int n);
  static WeightVector log_primes(int n);
  static WeightVector degrees(std::vector<int> degrees);
  static WeightVector rationals(std::vector<cpp_rational> entries);
  /// `ones`, `log-primes`, `degrees:1,1,2,3`, `rationals:3/2,1,...`. n is
  /// required for the first two and checked against the others (n < 0
  /// accepts any length).
  static WeightVector parse(std::string_view spec, int n);

  int size() const { return static_cast<int>(count_); }
  WeightKind kind() const { return kind_; }
  std::string spec() const;
  bool all_ones() const;

  SizeValue entry(int i) const;
  /// Entries in nondecreasing order.
  std::vector<SizeValue> sorted_entries() const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  SizeValue vsize(const Multiset& s) const;
  SizeValue from_scaled(const cpp_int& scaled) const;

  cpp_int scaled_size(const Multiset& s) const;
  cpp_int scaled_size(const Multiset& s, const PartMask& part) const;
  /// Index of the least-weight entry in the part, or -1 if the part is empty.
  int min_weight_index(const PartMask& part) const;
  /// Index of the interval of length eps = entry(eps_index) containing the
  /// value: floor(x / eps), or floor(x / eps - 1/2) when shifted.
  cpp_int bucket(const cpp_int& scaled, int eps_index, bool shifted) const;

  /// Integer bounds on scaled sizes of multisets inside the interval.
  cpp_int scaled_lower(const SizeValue& v) const;
  cpp_int scaled_upper(const SizeValue& v) const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  WeightKind kind_ = WeightKind::kLinear;
  std::size_t count_ = 0;
  std::string label_;
  std::vector<cpp_int> numerators_;  // linear: entry i = numerators_[i] / denominator_
  cpp_int denominator_ = 1;
  std::vector<std::uint64_t> primes_;  // log-primes
};

struct PrefixSum {
  SizeValue value;
  /// floor(s) exceeded the vector length; value is the full sum.
  bool exceeds_length = false;
};

/// Sum of the floor(s) smallest entries (0 when floor(s) = 0).
PrefixSum m_of(const WeightVector& v, double s);
PrefixSum m_of_count(const WeightVector& v, std::uint64_t count);

/// Lexicographic order L_sigma: sigma lists the ground set from sigma-least
/// to sigma-greatest; compares multiplicities from the top of sigma down.
int lex_compare(std::span<const int> sigma, const Multiset& s, const Multiset& t);

/// Fixed base order M_0: cardinality, then exponent vectors ascending.
int graded_lex_compare(const Multiset& s, const Multiset& t);

struct MultisetPoset {
  Poset poset;
  std::vector<Multiset> elements;  // elements[i] is poset index i
};

/// All multisets whose v-size lies in the interval, ascending lexicographic
/// by exponent vector.
std::vector<Multiset> enumerate_multisets(const WeightVector& v,
                                          const SizeInterval& interval,
                                          const Caps& caps = {});

/// The weighted multiset poset restricted to the interval, ordered by
/// inclusion.
MultisetPoset enumerate_poset(const WeightVector& v,
                              const SizeInterval& interval,
                              const Caps& caps = {});

}  // namespace posetdim
