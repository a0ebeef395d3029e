#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/components.hpp"
#include "posetdim/numeric.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// F_q for a prime power q = p^e. Elements are encoded as integers in
/// [0, q) whose base-p digits are the coefficients (lowest first) of a
/// polynomial over F_p reduced modulo `modulus`.
class FiniteField {
 public:
  /// Throws PreconditionError unless q is a prime power >= 2.
  explicit FiniteField(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  int degree() const { return e_; }
  /// Monic modulus over F_p (lowest coefficient first); empty when e = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }

  std::string element_str(std::uint32_t a) const;
  nlohmann::json to_json() const;

 private:
  std::uint32_t q_, p_;
  int e_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_;
};

/// Monic-or-not polynomial over F_q, coefficients lowest first, no trailing
/// zeros (the zero polynomial is empty).
struct Poly {
  std::vector<std::uint32_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool monic() const { return !c.empty() && c.back() == 1; }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Degree first, then coefficients from the top down.
bool poly_less(const Poly& a, const Poly& b);

Poly poly_mul(const FiniteField& f, const Poly& a, const Poly& b);
/// Quotient and remainder by a monic divisor.
std::pair<Poly, Poly> poly_divmod(const FiniteField& f, const Poly& a, const Poly& monic_divisor);
bool poly_divides(const FiniteField& f, const Poly& a, const Poly& b);
std::string poly_str(const FiniteField& f, const Poly& a);

/// The index-th monic polynomial of the degree, lexicographic with the high
/// coefficients most significant.
Poly monic_from_index(const FiniteField& f, int degree, std::uint64_t index);
std::uint64_t monic_count(const FiniteField& f, int degree);

/// Number of monic irreducibles of degree i: (1/i) sum_{d|i} mu(d) q^{i/d}.
cpp_int necklace_count(std::uint64_t q, int i);

struct IrreducibleList {
  std::vector<Poly> polys;          // ordered by (degree, lex)
  std::vector<std::uint64_t> counts;  // counts[i-1] = n_i
  std::vector<cpp_int> oracle;      // necklace values
  bool matches_oracle = false;
  std::uint64_t tested = 0;

  std::size_t total() const { return polys.size(); }
  /// Degrees of all listed irreducibles, ascending.
  std::vector<int> degrees() const;
};

/// Exhaustive enumeration with trial division by lower-degree irreducibles.
IrreducibleList irreducibles_up_to_degree(const FiniteField& f, int delta, const Caps& caps = {});

struct Factorization {
  std::vector<std::pair<Poly, std::uint32_t>> factors;  // ascending by poly_less
};

/// Full factorization of a monic polynomial by trial division; `irr` must
/// list all irreducibles up to half the degree.
Factorization factorize(const FiniteField& f, const Poly& a, const IrreducibleList& irr);
Poly expand(const FiniteField& f, const Factorization& fac);

struct PolyPosetSpec {
  std::uint32_t q = 2;
  int d0 = 0;
  int delta = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Monic polynomials with degree in [d0 - delta, d0], ordered by (degree, lex).
std::vector<Poly> monic_in_range(const FiniteField& f, int d0, int delta, const Caps& caps = {});

Poset build_poly_poset(const FiniteField& f, const std::vector<Poly>& elements,
                       const Caps& caps = {});
Poset build_poly_poset(const FiniteField& f, int d0, int delta, const Caps& caps = {});

struct PolyDecomposition {
  PolyPosetSpec spec;
  std::vector<Poly> elements;
  IrreducibleList small;  // irreducibles of degree <= delta
  std::vector<Poly> keys;  // component M, ascending by poly_less
  Decomposition decomposition;

  bool divides(const FiniteField& f, std::size_t a, std::size_t b) const {
    return poly_divides(f, elements[a], elements[b]);
  }
};

/// Components keyed by the product of irreducible factors of degree > delta;
/// images are exponents over the irreducibles of degree <= delta, weights
/// are their degrees and bounds [d0 - delta - deg M, d0 - deg M].
PolyDecomposition decompose_poly_poset(const FiniteField& f, int d0, int delta,
                                       const Caps& caps = {});

struct PolyDecompositionCheck {
  PartitionVerdict partition;
  PartitionVerdict cross;
  std::size_t iso_checked = 0;
  std::optional<std::size_t> iso_failed_component;
  IsoVerdict iso;

  bool ok() const { return partition.ok && cross.ok && !iso_failed_component; }
};

PolyDecompositionCheck verify_decomposition(const FiniteField& f, const PolyDecomposition& d,
                                            const Caps& caps = {});

struct PolyBound {
  std::uint32_t q = 2;
  int delta = 1;
  std::optional<HighFloat> log_branch;  // 910 (delta log q)^3 / (log delta)^2
  HighFloat cubic_branch;               // 172 delta^3 log q
  HighFloat minimum;
  /// 43 min(4.6 delta log q / log delta, 2 delta)^2 log(q^delta).
  HighFloat intermediate;
  std::string regime;  // "q<delta" or "q>=delta"
};

PolyBound dimension_bound_poly(std::uint32_t q, int delta);

struct AppendixBReport {
  std::uint32_t q = 2;
  int delta = 2;
  std::vector<int> degrees;               // sorted degree vector
  std::vector<std::int64_t> prefix_sums;  // m(v, j) for j = 1..n
  std::uint64_t n = 0;
  cpp_int q_delta;
  bool n_bound_holds = false;           // n <= q^delta
  bool per_degree_holds = false;        // n_i <= q^i / i
  HighFloat r;                          // 4.6 delta log q / log delta
  std::int64_t m_at_r = 0;
  bool r_branch_holds = false;          // m(v, r) >= 2 delta
  std::int64_t m_at_two_delta = 0;
  bool trivial_branch_holds = false;    // m(v, 2 delta) >= 2 delta

  bool ok() const {
    return n_bound_holds && per_degree_holds && r_branch_holds && trivial_branch_holds;
  }
};

/// Requires delta >= 2.
AppendixBReport verify_appendix_b(std::uint32_t q, int delta, const Caps& caps = {});

struct PolyRealiser {
  PolyDecomposition decomposition;
  MergedRealiser merged;
  std::optional<PolyBound> bound;  // absent for delta = 0
  std::optional<Poset> poset;
  std::optional<RealiserVerdict> certification;

  std::size_t size() const { return merged.size(); }
};

PolyRealiser build_poly_realiser(const FiniteField& f, int d0, int delta, std::uint64_t seed,
                                 const Caps& caps = {});

nlohmann::json to_json(const IrreducibleList& l, const FiniteField& f, bool list_polys = true);
nlohmann::json to_json(const PolyBound& b);
nlohmann::json to_json(const AppendixBReport& r);
nlohmann::json to_json(const PolyDecompositionCheck& c, const PolyDecomposition& d);
nlohmann::json to_json(const PolyRealiser& r);

}  // namespace posetdim
