#include "posetdim/multiset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/number.hpp>

#include "posetdim/error.hpp"
#include "posetdim/primes.hpp"

namespace posetdim {

namespace mp = boost::multiprecision;

// ----- Multiset -----

std::uint64_t Multiset::cardinality() const {
  return std::accumulate(x.begin(), x.end(), std::uint64_t{0});
}

bool Multiset::subset_of(const Multiset& t) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > t.x[i]) return false;
  }
  return true;
}

std::vector<int> Multiset::support_minus(const Multiset& t) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > t.x[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string Multiset::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

// ----- SizeValue -----

SizeValue SizeValue::log_of(cpp_rational value) {
  if (value <= 0) throw PreconditionError("log of a non-positive value");
  return {WeightKind::kLogPrimes, std::move(value)};
}

namespace {

void require_same_kind(const SizeValue& a, const SizeValue& b) {
  if (a.kind() != b.kind()) {
    throw PreconditionError("mixing linear and log-domain sizes");
  }
}

}  // namespace

SizeValue SizeValue::plus(const SizeValue& o) const {
  require_same_kind(*this, o);
  if (kind_ == WeightKind::kLinear) return linear(repr_ + o.repr_);
  return log_of(repr_ * o.repr_);
}

SizeValue SizeValue::minus(const SizeValue& o) const {
  require_same_kind(*this, o);
  if (kind_ == WeightKind::kLinear) return linear(repr_ - o.repr_);
  return log_of(repr_ / o.repr_);
}

SizeValue SizeValue::doubled() const {
  if (kind_ == WeightKind::kLinear) return linear(repr_ * 2);
  return log_of(repr_ * repr_);
}

HighFloat SizeValue::high() const {
  if (kind_ == WeightKind::kLinear) return to_high(repr_);
  return log(to_high(repr_));
}

double SizeValue::approx() const { return high().convert_to<double>(); }

std::string SizeValue::str() const {
  if (kind_ == WeightKind::kLinear) return to_string(repr_);
  return "log(" + to_string(repr_) + ")";
}

std::strong_ordering operator<=>(const SizeValue& a, const SizeValue& b) {
  require_same_kind(a, b);
  // log is increasing, so both kinds compare by representation.
  if (a.repr_ < b.repr_) return std::strong_ordering::less;
  if (a.repr_ > b.repr_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ----- WeightVector -----

WeightVector WeightVector::ones(int n) {
  if (n < 1) throw PreconditionError("weight vector needs n >= 1");
  WeightVector w;
  w.kind_ = WeightKind::kLinear;
  w.count_ = static_cast<std::size_t>(n);
  w.numerators_.assign(w.count_, 1);
  w.label_ = "ones";
  return w;
}

WeightVector WeightVector::log_primes(int n) {
  if (n < 0) throw PreconditionError("weight vector needs n >= 0");
  WeightVector w;
  w.kind_ = WeightKind::kLogPrimes;
  w.count_ = static_cast<std::size_t>(n);
  w.primes_ = first_primes(w.count_);
  w.label_ = "log-primes";
  return w;
}

WeightVector WeightVector::degrees(std::vector<int> degrees) {
  std::vector<cpp_rational> entries;
  for (const int d : degrees) {
    if (d < 1) throw PreconditionError("degree weights must be positive");
    entries.emplace_back(d);
  }
  WeightVector w = rationals(std::move(entries));
  std::string label = "degrees:";
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) label += ",";
    label += std::to_string(degrees[i]);
  }
  w.label_ = label;
  return w;
}

WeightVector WeightVector::rationals(std::vector<cpp_rational> entries) {
  WeightVector w;
  w.kind_ = WeightKind::kLinear;
  w.count_ = entries.size();
  cpp_int lcm = 1;
  for (const auto& e : entries) {
    if (e <= 0) throw PreconditionError("weights must be strictly positive");
    lcm = mp::lcm(lcm, cpp_int(mp::denominator(e)));
  }
  w.denominator_ = lcm;
  std::string label = "rationals:";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    w.numerators_.push_back(mp::numerator(entries[i]) * (lcm / mp::denominator(entries[i])));
    if (i) label += ",";
    label += to_string(entries[i]);
  }
  w.label_ = label;
  return w;
}

WeightVector WeightVector::parse(std::string_view spec, int n) {
  auto check_length = [&](const WeightVector& w) {
    if (n >= 0 && w.size() != n) {
      throw InputError("weight spec '" + std::string(spec) + "' has " +
                       std::to_string(w.size()) + " entries, expected " +
                       std::to_string(n));
    }
    return w;
  };
  auto split = [](std::string_view list) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : list) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  if (spec == "ones") {
    if (n < 1) throw InputError("'ones' weights need n");
    return ones(n);
  }
  if (spec == "log-primes") {
    if (n < 0) throw InputError("'log-primes' weights need n");
    return log_primes(n);
  }
  if (spec.starts_with("degrees:")) {
    std::vector<int> d;
    for (const auto& part : split(spec.substr(8))) {
      const cpp_rational q = parse_rational(part);
      if (mp::denominator(q) != 1) throw InputError("degrees must be integers");
      d.push_back(static_cast<int>(mp::numerator(q)));
    }
    try {
      return check_length(degrees(std::move(d)));
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  }
  if (spec.starts_with("rationals:")) {
    std::vector<cpp_rational> q;
    for (const auto& part : split(spec.substr(10))) q.push_back(parse_rational(part));
    try {
      return check_length(rationals(std::move(q)));
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("unknown weight spec '" + std::string(spec) + "'");
}

std::string WeightVector::spec() const { return label_; }

bool WeightVector::all_ones() const {
  if (kind_ != WeightKind::kLinear) return false;
  return std::all_of(numerators_.begin(), numerators_.end(),
                     [&](const cpp_int& a) { return a == denominator_; });
}

SizeValue WeightVector::entry(int i) const {
  if (kind_ == WeightKind::kLinear) {
    return SizeValue::linear(cpp_rational(numerators_[i], denominator_));
  }
  return SizeValue::log_of(cpp_rational(primes_[i]));
}

std::vector<SizeValue> WeightVector::sorted_entries() const {
  std::vector<SizeValue> out;
  for (int i = 0; i < size(); ++i) out.push_back(entry(i));
  std::sort(out.begin(), out.end());
  return out;
}

cpp_int WeightVector::scaled_size(const Multiset& s) const {
  if (kind_ == WeightKind::kLinear) {
    cpp_int sum = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      if (s.x[i]) sum += numerators_[i] * s.x[i];
    }
    return sum;
  }
  cpp_int prod = 1;
  for (std::size_t i = 0; i < count_; ++i) {
    if (s.x[i]) prod *= mp::pow(cpp_int(primes_[i]), s.x[i]);
  }
  return prod;
}

cpp_int WeightVector::scaled_size(const Multiset& s, const PartMask& part) const {
  if (kind_ == WeightKind::kLinear) {
    cpp_int sum = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      if (part[i] && s.x[i]) sum += numerators_[i] * s.x[i];
    }
    return sum;
  }
  cpp_int prod = 1;
  for (std::size_t i = 0; i < count_; ++i) {
    if (part[i] && s.x[i]) prod *= mp::pow(cpp_int(primes_[i]), s.x[i]);
  }
  return prod;
}

SizeValue WeightVector::vsize(const Multiset& s) const {
  if (s.ambient() != count_) {
    throw PreconditionError("multiset length does not match weight vector");
  }
  return from_scaled(scaled_size(s));
}

SizeValue WeightVector::from_scaled(const cpp_int& scaled) const {
  if (kind_ == WeightKind::kLinear) return SizeValue::linear(cpp_rational(scaled, denominator_));
  return SizeValue::log_of(cpp_rational(scaled));
}

int WeightVector::min_weight_index(const PartMask& part) const {
  int best = -1;
  for (std::size_t i = 0; i < count_; ++i) {
    if (!part[i]) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const bool smaller = kind_ == WeightKind::kLinear
                             ? numerators_[i] < numerators_[best]
                             : primes_[i] < primes_[best];
    if (smaller) best = static_cast<int>(i);
  }
  return best;
}

namespace {

// Largest j with base^j <= value, for value >= 1 and base >= 2.
cpp_int floor_log(const cpp_int& value, std::uint64_t base) {
  cpp_int j = 0;
  cpp_int power = base;
  while (power <= value) {
    ++j;
    power *= base;
  }
  return j;
}

}  // namespace

cpp_int WeightVector::bucket(const cpp_int& scaled, int eps_index, bool shifted) const {
  if (kind_ == WeightKind::kLinear) {
    const cpp_int& eps = numerators_[eps_index];
    if (!shifted) return floor_div(scaled, eps);
    // floor(x/eps - 1/2) = floor((2x - eps) / (2 eps))
    return floor_div(2 * scaled - eps, 2 * eps);
  }
  // x = log A, eps = log p: floor(x/eps) = floor(log_p A) and
  // floor(x/eps - 1/2) = floor((floor(log_p A^2) - 1) / 2).
  const std::uint64_t p = primes_[eps_index];
  if (!shifted) return floor_log(scaled, p);
  return floor_div(floor_log(scaled * scaled, p) - 1, 2);
}

cpp_int WeightVector::scaled_lower(const SizeValue& v) const {
  if (kind_ == WeightKind::kLinear) {
    if (v.kind() != WeightKind::kLinear) throw PreconditionError("interval kind mismatch");
    return ceil_of(v.repr() * denominator_);
  }
  if (v.kind() != WeightKind::kLogPrimes) throw PreconditionError("interval kind mismatch");
  return ceil_of(v.repr());
}

cpp_int WeightVector::scaled_upper(const SizeValue& v) const {
  if (kind_ == WeightKind::kLinear) {
    if (v.kind() != WeightKind::kLinear) throw PreconditionError("interval kind mismatch");
    return floor_of(v.repr() * denominator_);
  }
  if (v.kind() != WeightKind::kLogPrimes) throw PreconditionError("interval kind mismatch");
  return floor_of(v.repr());
}

// ----- m(v, s) -----

PrefixSum m_of_count(const WeightVector& v, std::uint64_t count) {
  PrefixSum out;
  out.value = v.kind() == WeightKind::kLinear ? SizeValue::linear(0)
                                              : SizeValue::log_of(1);
  const auto sorted = v.sorted_entries();
  out.exceeds_length = count > sorted.size();
  const std::size_t take = std::min<std::uint64_t>(count, sorted.size());
  for (std::size_t i = 0; i < take; ++i) out.value = out.value.plus(sorted[i]);
  return out;
}

PrefixSum m_of(const WeightVector& v, double s) {
  if (!(s >= 0)) throw PreconditionError("m(v, s) needs s >= 0");
  return m_of_count(v, static_cast<std::uint64_t>(std::floor(s)));
}

// ----- orders -----

int lex_compare(std::span<const int> sigma, const Multiset& s, const Multiset& t) {
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    const auto a = s.x[*it];
    const auto b = t.x[*it];
    if (a != b) return a > b ? 1 : -1;
  }
  return 0;
}

int graded_lex_compare(const Multiset& s, const Multiset& t) {
  const auto cs = s.cardinality();
  const auto ct = t.cardinality();
  if (cs != ct) return cs < ct ? -1 : 1;
  if (s.x == t.x) return 0;
  return s.x < t.x ? -1 : 1;
}

// ----- enumeration -----

namespace {

class Enumerator {
 public:
  Enumerator(const WeightVector& v, cpp_int lower, cpp_int upper,
             std::size_t cap)
      : v_(v), lower_(std::move(lower)), upper_(std::move(upper)), cap_(cap) {}

  std::vector<Multiset> run() {
    Multiset cur(static_cast<std::size_t>(v_.size()));
    const bool log_kind = v_.kind() == WeightKind::kLogPrimes;
    if (upper_ < (log_kind ? 1 : 0)) return {};
    step(0, cur, log_kind ? cpp_int(1) : cpp_int(0));
    return std::move(out_);
  }

 private:
  void step(int i, Multiset& cur, const cpp_int& acc) {
    if (i == v_.size()) {
      if (acc >= lower_) {
        if (out_.size() >= cap_) {
          throw CapExceeded("weighted multiset poset exceeds " +
                            std::to_string(cap_) + " elements");
        }
        out_.push_back(cur);
      }
      return;
    }
    Multiset unit(static_cast<std::size_t>(v_.size()));
    unit.x[i] = 1;
    const cpp_int w = v_.scaled_size(unit);
    const bool log_kind = v_.kind() == WeightKind::kLogPrimes;
    cpp_int value = acc;
    for (std::uint32_t e = 0;; ++e) {
      cur.x[i] = e;
      step(i + 1, cur, value);
      value = log_kind ? cpp_int(value * w) : cpp_int(value + w);
      if (value > upper_) break;
    }
    cur.x[i] = 0;
  }

  const WeightVector& v_;
  cpp_int lower_;
  cpp_int upper_;
  std::size_t cap_;
  std::vector<Multiset> out_;
};

}  // namespace

std::vector<Multiset> enumerate_multisets(const WeightVector& v,
                                          const SizeInterval& interval,
                                          const Caps& caps) {
  Enumerator e(v, v.scaled_lower(interval.lo), v.scaled_upper(interval.hi),
               caps.multiset_elements);
  return e.run();
}

MultisetPoset enumerate_poset(const WeightVector& v, const SizeInterval& interval,
                              const Caps& caps) {
  auto elements = enumerate_multisets(v, interval, caps);
  std::vector<std::string> ids;
  ids.reserve(elements.size());
  for (const auto& m : elements) ids.push_back(m.str());
  auto poset = Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) { return elements[a].subset_of(elements[b]); },
      caps);
  return {std::move(poset), std::move(elements)};
}

}  // namespace posetdim
