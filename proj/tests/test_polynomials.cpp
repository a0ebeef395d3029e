#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "posetdim/error.hpp"
#include "posetdim/exact_dimension.hpp"
#include "posetdim/polynomials.hpp"
#include "posetdim/rng.hpp"

using namespace posetdim;

namespace {

/// Monic polynomials of degree d that are not a product of two monic
/// polynomials of positive degree, found by multiplying out all products.
std::size_t count_by_products(const FiniteField& f, int d) {
  std::set<std::vector<std::uint32_t>> reducible;
  for (int i = 1; i <= d / 2; ++i) {
    for (std::uint64_t a = 0; a < monic_count(f, i); ++a)
      for (std::uint64_t b = 0; b < monic_count(f, d - i); ++b)
        reducible.insert(
            poly_mul(f, monic_from_index(f, i, a), monic_from_index(f, d - i, b)).c);
  }
  return monic_count(f, d) - reducible.size();
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(FiniteField, PrimeAndExtensionAxioms) {
  for (const std::uint32_t q : {2U, 3U, 4U, 5U, 8U, 9U}) {
    const FiniteField f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0U);
      bool has_inverse = a == 0;
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        if (f.mul(a, b) == 1) has_inverse = true;
        for (std::uint32_t c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        }
      }
      EXPECT_TRUE(has_inverse) << q << " " << a;
    }
  }
  EXPECT_THROW(FiniteField(6), PreconditionError);
  EXPECT_THROW(FiniteField(1), PreconditionError);
}

TEST(FiniteField, CanonicalModulus) {
  EXPECT_TRUE(FiniteField(5).modulus().empty());
  EXPECT_EQ(FiniteField(4).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));     // x^2+x+1
  EXPECT_EQ(FiniteField(8).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));  // x^3+x+1
  EXPECT_EQ(FiniteField(9).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));     // x^2+1
}

TEST(Polynomials, DivisionRoundTrip) {
  const FiniteField f(3);
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly a = monic_from_index(f, 1 + static_cast<int>(rng.below(3)), rng.below(27));
    const Poly b = monic_from_index(f, static_cast<int>(rng.below(4)), rng.below(27));
    const Poly ab = poly_mul(f, a, b);
    EXPECT_TRUE(ab.monic());
    EXPECT_EQ(ab.degree(), a.degree() + b.degree());
    const auto [q, r] = poly_divmod(f, ab, a);
    EXPECT_EQ(q, b);
    EXPECT_TRUE(r.c.empty());
    EXPECT_TRUE(poly_divides(f, a, ab));
  }
  EXPECT_EQ(poly_str(f, Poly{{2, 0, 1}}), "x^2+2");
  EXPECT_EQ(poly_str(f, Poly{{1}}), "1");
}

TEST(Irreducibles, SmallCounts) {
  const auto l2 = irreducibles_up_to_degree(FiniteField(2), 3);
  EXPECT_EQ(l2.counts, (std::vector<std::uint64_t>{2, 1, 2}));
  EXPECT_EQ(l2.total(), 5U);
  EXPECT_LE(l2.total(), 8U);
  const auto l3 = irreducibles_up_to_degree(FiniteField(3), 2);
  EXPECT_EQ(l3.counts, (std::vector<std::uint64_t>{3, 3}));
}

TEST(Irreducibles, MatchNecklaceAndProductOracles) {
  for (const std::uint32_t q : {2U, 3U, 4U, 5U}) {
    const FiniteField f(q);
    const auto l = irreducibles_up_to_degree(f, 6);
    EXPECT_TRUE(l.matches_oracle);
    for (int i = 1; i <= 6; ++i) {
      EXPECT_EQ(cpp_int(l.counts[i - 1]), necklace_count(q, i)) << q << " " << i;
      EXPECT_LE(l.counts[i - 1] * i, ipow(q, i));
      if (ipow(q, i) <= 1024) EXPECT_EQ(l.counts[i - 1], count_by_products(f, i)) << q << " " << i;
    }
    EXPECT_LE(l.total(), ipow(q, 6));
  }
}

TEST(Irreducibles, CapIsEnforced) {
  Caps caps;
  caps.poly_enumeration = 100;
  EXPECT_THROW(irreducibles_up_to_degree(FiniteField(5), 3, caps), CapExceeded);
}

TEST(Factorization, UniqueFactorizationRebuilds) {
  for (const std::uint32_t q : {2U, 3U, 4U}) {
    const FiniteField f(q);
    const auto irr = irreducibles_up_to_degree(f, 3);
    for (int d = 0; d <= 5; ++d)
      for (std::uint64_t i = 0; i < monic_count(f, d); ++i) {
        const Poly a = monic_from_index(f, d, i);
        const auto fac = factorize(f, a, irr);
        EXPECT_EQ(expand(f, fac), a);
        for (const auto& [g, m] : fac.factors) {
          const auto again = factorize(f, g, irr);
          ASSERT_EQ(again.factors.size(), 1U);
          EXPECT_EQ(again.factors[0].second, 1U);
        }
      }
  }
}

TEST(PolyPoset, Shapes) {
  const FiniteField f(2);
  const Poset p = build_poly_poset(f, 2, 2);
  EXPECT_EQ(p.size(), 7U);
  const auto one = *p.index_of("1");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != one) EXPECT_TRUE(p.less(one, i));
  const Poset a = build_poly_poset(FiniteField(3), 2, 0);
  EXPECT_EQ(a.size(), 9U);
  EXPECT_EQ(a.relation_count(), 0U);
  EXPECT_THROW(build_poly_poset(f, 1, 2), PreconditionError);
}

TEST(PolyDecomposition, Q2D3Delta3) {
  const FiniteField f(2);
  const auto d = decompose_poly_poset(f, 3, 3);
  EXPECT_EQ(d.elements.size(), 15U);
  EXPECT_EQ(d.small.degrees(), (std::vector<int>{1, 1, 2, 3, 3}));
  // Every polynomial of degree <= 3 is 3-smooth: one component.
  EXPECT_EQ(d.decomposition.components.size(), 1U);
  EXPECT_TRUE(verify_decomposition(f, d).ok());
}

TEST(PolyDecomposition, SmoothComponentAndPartition) {
  for (const auto [q, d0, delta] : {std::tuple{2U, 5, 2}, std::tuple{3U, 3, 1}, std::tuple{4U, 3, 2},
                                    std::tuple{5U, 2, 1}, std::tuple{2U, 6, 3}}) {
    const FiniteField f(q);
    const auto d = decompose_poly_poset(f, d0, delta);
    const auto check = verify_decomposition(f, d);
    EXPECT_TRUE(check.ok()) << q << " " << d0 << " " << delta;
    // Component M = 1 holds exactly the polynomials with all factors of
    // degree <= delta.
    const auto full = irreducibles_up_to_degree(f, d0);
    ASSERT_TRUE(d.keys.front().is_one());
    std::set<std::size_t> smooth;
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
      bool ok = true;
      for (const auto& [g, m] : factorize(f, d.elements[i], full).factors)
        if (g.degree() > delta) ok = false;
      if (ok) smooth.insert(i);
    }
    const auto& c1 = d.decomposition.components.front().members;
    EXPECT_EQ(std::set<std::size_t>(c1.begin(), c1.end()), smooth);
  }
}

TEST(PolyDecomposition, CorruptionIsCaught) {
  const FiniteField f(3);
  auto d = decompose_poly_poset(f, 2, 1);
  auto& c = d.decomposition.components.front();
  std::swap(c.images[0], c.images[c.images.size() - 1]);
  const auto check = verify_decomposition(f, d);
  EXPECT_FALSE(check.ok());
  ASSERT_TRUE(check.iso_failed_component);
  EXPECT_TRUE(check.iso.witness);
}

TEST(PolyBounds, Formulas) {
  const auto b = dimension_bound_poly(2, 4);
  const double l2 = std::log(2.0);
  ASSERT_TRUE(b.log_branch);
  EXPECT_NEAR(b.log_branch->convert_to<double>(), 910 * std::pow(4 * l2, 3) / std::pow(std::log(4.0), 2), 1e-6);
  EXPECT_NEAR(b.cubic_branch.convert_to<double>(), 172 * 64 * l2, 1e-6);
  EXPECT_EQ(b.minimum, std::min(*b.log_branch, b.cubic_branch));
  EXPECT_EQ(b.regime, "q<delta");
  const auto one = dimension_bound_poly(7, 1);
  EXPECT_FALSE(one.log_branch);
  EXPECT_NEAR(one.minimum.convert_to<double>(), 172 * std::log(7.0), 1e-9);
  const auto b53 = dimension_bound_poly(5, 3);
  const double l5 = std::log(5.0);
  EXPECT_NEAR(b53.log_branch->convert_to<double>(), 910 * std::pow(3 * l5, 3) / std::pow(std::log(3.0), 2), 1e-6);
  EXPECT_NEAR(b53.cubic_branch.convert_to<double>(), 172 * 27 * l5, 1e-6);
  EXPECT_EQ(b53.regime, "q>=delta");
  // The intermediate value never exceeds the stated minimum.
  for (const std::uint32_t q : {2U, 3U, 5U, 7U})
    for (int delta = 1; delta <= 8; ++delta) {
      const auto x = dimension_bound_poly(q, delta);
      EXPECT_LE(x.intermediate, x.minimum * (1 + HighFloat("1e-30"))) << q << " " << delta;
    }
  EXPECT_THROW(dimension_bound_poly(2, 0), PreconditionError);
}

TEST(AppendixB, Instances) {
  const auto a = verify_appendix_b(2, 4);
  EXPECT_EQ(a.degrees, (std::vector<int>{1, 1, 2, 3, 3, 4, 4, 4}));
  EXPECT_EQ(a.n, 8U);
  EXPECT_NEAR(a.r.convert_to<double>(), 9.2, 1e-9);
  EXPECT_EQ(a.m_at_r, 22);
  EXPECT_TRUE(a.ok());
  EXPECT_TRUE(verify_appendix_b(3, 2).ok());
  EXPECT_TRUE(verify_appendix_b(3, 3).ok());
  EXPECT_TRUE(verify_appendix_b(5, 2).ok());
  EXPECT_THROW(verify_appendix_b(2, 1), PreconditionError);
}

TEST(PolyRealiser, Certified) {
  const auto r = build_poly_realiser(FiniteField(2), 3, 3, 0);
  ASSERT_TRUE(r.certification);
  EXPECT_TRUE(r.certification->ok);
  EXPECT_LE(HighFloat(r.size()), r.bound->minimum);
  const auto r3 = build_poly_realiser(FiniteField(3), 2, 2, 0);
  EXPECT_TRUE(r3.certification->ok);
  const auto r4 = build_poly_realiser(FiniteField(4), 3, 1, 0);
  EXPECT_TRUE(r4.certification->ok);
}

TEST(PolyRealiser, ZeroDeltaIsAntichain) {
  const auto r = build_poly_realiser(FiniteField(3), 2, 0, 0);
  EXPECT_EQ(r.size(), 2U);
  EXPECT_TRUE(r.certification->ok);
  EXPECT_FALSE(r.bound);
}

TEST(PolyRealiser, ExactDimensionBelowRealiser) {
  const auto r = build_poly_realiser(FiniteField(2), 3, 2, 1);
  Caps caps;
  caps.exact_elements = 20;
  caps.exact_critical_pairs = 400;
  const auto exact = exact_dimension(*r.poset, 6, caps);
  ASSERT_TRUE(exact.dimension);
  EXPECT_LE(static_cast<std::size_t>(*exact.dimension), r.size());
}
