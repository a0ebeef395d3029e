#include "posetdim/polynomials.hpp"

#include <algorithm>
#include <map>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

void trim(Poly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

// ----- field -----

FiniteField::FiniteField(std::uint32_t q) : q_(q), p_(0), e_(0) {
  if (q < 2 || q > 65536) throw PreconditionError("field size must be in [2, 65536]");
  for (std::uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p_ = d;
      break;
    }
  }
  std::uint32_t rest = q;
  while (rest % p_ == 0) {
    rest /= p_;
    ++e_;
  }
  if (rest != 1) throw PreconditionError(std::to_string(q) + " is not a prime power");

  add_.resize(static_cast<std::size_t>(q) * q);
  mul_.resize(static_cast<std::size_t>(q) * q);
  neg_.resize(q);
  if (e_ == 1) {
    for (std::uint32_t a = 0; a < q; ++a) {
      neg_[a] = (q - a) % q;
      for (std::uint32_t b = 0; b < q; ++b) {
        add_[a * q + b] = (a + b) % q;
        mul_[a * q + b] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a) * b % q);
      }
    }
    return;
  }

  // Least monic irreducible of degree e over F_p.
  const FiniteField base(p_);
  const std::uint64_t count = ipow(p_, e_);
  for (std::uint64_t idx = 0; idx < count && modulus_.empty(); ++idx) {
    const Poly cand = monic_from_index(base, e_, idx);
    bool irreducible = true;
    for (int d = 1; 2 * d <= e_ && irreducible; ++d) {
      for (std::uint64_t j = 0; j < ipow(p_, d); ++j) {
        if (poly_divides(base, monic_from_index(base, d, j), cand)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) modulus_ = cand.c;
  }

  auto decode = [&](std::uint32_t a) {
    Poly out;
    for (int i = 0; i < e_; ++i) {
      out.c.push_back(a % p_);
      a /= p_;
    }
    trim(out);
    return out;
  };
  auto encode = [&](const Poly& a) {
    std::uint32_t v = 0;
    for (int i = a.degree(); i >= 0; --i) v = v * p_ + a.c[i];
    return v;
  };
  const Poly mod{modulus_};
  for (std::uint32_t a = 0; a < q; ++a) {
    const Poly pa = decode(a);
    Poly na = pa;
    for (auto& c : na.c) c = (p_ - c) % p_;
    neg_[a] = encode(na);
    for (std::uint32_t b = 0; b < q; ++b) {
      const Poly pb = decode(b);
      Poly sum;
      sum.c.resize(static_cast<std::size_t>(e_), 0);
      for (int i = 0; i < e_; ++i) {
        const std::uint32_t x = i < static_cast<int>(pa.c.size()) ? pa.c[i] : 0;
        const std::uint32_t y = i < static_cast<int>(pb.c.size()) ? pb.c[i] : 0;
        sum.c[i] = (x + y) % p_;
      }
      trim(sum);
      add_[a * q + b] = encode(sum);
      mul_[a * q + b] = encode(poly_divmod(base, poly_mul(base, pa, pb), mod).second);
    }
  }
}

std::string FiniteField::element_str(std::uint32_t a) const {
  return e_ == 1 ? std::to_string(a) : "{" + std::to_string(a) + "}";
}

nlohmann::json FiniteField::to_json() const {
  nlohmann::json j = {{"q", q_}, {"p", p_}, {"e", e_}};
  j["modulus"] = modulus_.empty() ? nlohmann::json(nullptr) : nlohmann::json(modulus_);
  return j;
}

// ----- polynomials -----

bool poly_less(const Poly& a, const Poly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

Poly poly_mul(const FiniteField& f, const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  Poly out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      out.c[i + j] = f.add(out.c[i + j], f.mul(a.c[i], b.c[j]));
    }
  }
  trim(out);
  return out;
}

std::pair<Poly, Poly> poly_divmod(const FiniteField& f, const Poly& a, const Poly& d) {
  if (!d.monic()) throw PreconditionError("division needs a monic divisor");
  Poly rem = a;
  trim(rem);
  const int dd = d.degree();
  if (rem.degree() < dd) return {Poly{}, rem};
  Poly quo;
  quo.c.assign(static_cast<std::size_t>(rem.degree() - dd + 1), 0);
  for (int i = rem.degree(); i >= dd; --i) {
    const std::uint32_t coef = rem.c[i];
    if (coef == 0) continue;
    quo.c[i - dd] = coef;
    for (int j = 0; j <= dd; ++j) {
      rem.c[i - dd + j] = f.sub(rem.c[i - dd + j], f.mul(coef, d.c[j]));
    }
  }
  trim(rem);
  trim(quo);
  return {quo, rem};
}

bool poly_divides(const FiniteField& f, const Poly& a, const Poly& b) {
  return poly_divmod(f, b, a).second.c.empty();
}

std::string poly_str(const FiniteField& f, const Poly& a) {
  if (a.c.empty()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    const std::uint32_t c = a.c[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (c != 1 || i == 0) out += f.element_str(c);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

std::uint64_t monic_count(const FiniteField& f, int degree) { return ipow(f.q(), degree); }

Poly monic_from_index(const FiniteField& f, int degree, std::uint64_t index) {
  Poly out;
  out.c.resize(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j < degree; ++j) {
    out.c[j] = static_cast<std::uint32_t>(index % f.q());
    index /= f.q();
  }
  out.c[degree] = 1;
  return out;
}

cpp_int necklace_count(std::uint64_t q, int i) {
  if (i < 1) throw PreconditionError("necklace count needs i >= 1");
  cpp_int sum = 0;
  for (int d = 1; d <= i; ++d) {
    if (i % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    cpp_int term = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(i / d));
    sum += mu > 0 ? term : cpp_int(-term);
  }
  return sum / i;
}

std::vector<int> IrreducibleList::degrees() const {
  std::vector<int> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.degree());
  return out;
}

IrreducibleList irreducibles_up_to_degree(const FiniteField& f, int delta, const Caps& caps) {
  if (delta < 0) throw PreconditionError("degree bound must be non-negative");
  IrreducibleList out;
  cpp_int total = 0;
  for (int d = 1; d <= delta; ++d) total += boost::multiprecision::pow(cpp_int(f.q()), d);
  if (total > caps.poly_enumeration) {
    throw CapExceeded("irreducible enumeration would test " + total.str() + " polynomials");
  }
  for (int d = 1; d <= delta; ++d) {
    std::uint64_t count = 0;
    const std::uint64_t total_d = monic_count(f, d);
    for (std::uint64_t idx = 0; idx < total_d; ++idx) {
      const Poly cand = monic_from_index(f, d, idx);
      ++out.tested;
      bool irreducible = true;
      for (const auto& g : out.polys) {
        if (2 * g.degree() > d) break;
        if (poly_divides(f, g, cand)) {
          irreducible = false;
          break;
        }
      }
      if (irreducible) {
        out.polys.push_back(cand);
        ++count;
      }
    }
    out.counts.push_back(count);
    out.oracle.push_back(necklace_count(f.q(), d));
  }
  out.matches_oracle = true;
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    if (cpp_int(out.counts[i]) != out.oracle[i]) out.matches_oracle = false;
  }
  return out;
}

Factorization factorize(const FiniteField& f, const Poly& a, const IrreducibleList& irr) {
  if (!a.monic()) throw PreconditionError("factorization needs a monic polynomial");
  Factorization out;
  Poly rest = a;
  for (const auto& g : irr.polys) {
    if (2 * g.degree() > rest.degree()) break;
    std::uint32_t mult = 0;
    while (true) {
      auto [quo, rem] = poly_divmod(f, rest, g);
      if (!rem.c.empty()) break;
      rest = std::move(quo);
      ++mult;
    }
    if (mult > 0) out.factors.emplace_back(g, mult);
  }
  if (rest.degree() > 0) {
    const int last = irr.polys.empty() ? 0 : irr.polys.back().degree();
    if (2 * (last + 1) <= rest.degree()) {
      throw PreconditionError("irreducible list too short to factor " + poly_str(f, a));
    }
    out.factors.emplace_back(rest, 1);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });
  return out;
}

Poly expand(const FiniteField& f, const Factorization& fac) {
  Poly out{{1}};
  for (const auto& [g, mult] : fac.factors) {
    for (std::uint32_t i = 0; i < mult; ++i) out = poly_mul(f, out, g);
  }
  return out;
}

// ----- posets -----

void PolyPosetSpec::validate() const {
  if (delta < 0) throw PreconditionError("delta must be non-negative");
  if (d0 < delta) throw PreconditionError("d0 must be at least delta");
}

nlohmann::json PolyPosetSpec::to_json() const {
  return {{"q", q}, {"d0", d0}, {"delta", delta}};
}

std::vector<Poly> monic_in_range(const FiniteField& f, int d0, int delta, const Caps& caps) {
  PolyPosetSpec{f.q(), d0, delta}.validate();
  cpp_int total = 0;
  for (int d = d0 - delta; d <= d0; ++d) total += boost::multiprecision::pow(cpp_int(f.q()), d);
  if (total > caps.poly_enumeration) {
    throw CapExceeded("range holds " + total.str() + " monic polynomials");
  }
  std::vector<Poly> out;
  for (int d = d0 - delta; d <= d0; ++d) {
    const std::uint64_t count = monic_count(f, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) out.push_back(monic_from_index(f, d, idx));
  }
  return out;
}

Poset build_poly_poset(const FiniteField& f, const std::vector<Poly>& elements,
                       const Caps& caps) {
  check_relation_cap(elements.size(), caps);
  std::vector<std::string> ids;
  ids.reserve(elements.size());
  for (const auto& e : elements) ids.push_back(poly_str(f, e));
  return Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) {
        return elements[a].degree() < elements[b].degree() &&
               poly_divides(f, elements[a], elements[b]);
      },
      caps);
}

Poset build_poly_poset(const FiniteField& f, int d0, int delta, const Caps& caps) {
  return build_poly_poset(f, monic_in_range(f, d0, delta, caps), caps);
}

PolyDecomposition decompose_poly_poset(const FiniteField& f, int d0, int delta,
                                       const Caps& caps) {
  PolyDecomposition out;
  out.spec = {f.q(), d0, delta};
  out.elements = monic_in_range(f, d0, delta, caps);
  out.small = irreducibles_up_to_degree(f, delta, caps);
  const std::size_t n = out.small.total();

  auto cmp = [](const Poly& a, const Poly& b) { return poly_less(a, b); };
  std::map<Poly, Component, decltype(cmp)> groups(cmp);
  for (std::size_t idx = 0; idx < out.elements.size(); ++idx) {
    Poly rest = out.elements[idx];
    Multiset image(n);
    for (std::size_t i = 0; i < n; ++i) {
      while (true) {
        auto [quo, rem] = poly_divmod(f, rest, out.small.polys[i]);
        if (!rem.c.empty()) break;
        rest = std::move(quo);
        ++image.x[i];
      }
    }
    auto& c = groups[rest];
    c.members.push_back(idx);
    c.images.push_back(std::move(image));
  }

  auto& d = out.decomposition;
  d.weights = std::make_shared<const WeightVector>(WeightVector::degrees(out.small.degrees()));
  d.width = SizeValue::linear(delta);
  for (auto& [key, c] : groups) {
    c.key = poly_str(f, key);
    c.interval = {SizeValue::linear(d0 - delta - key.degree()),
                  SizeValue::linear(d0 - key.degree())};
    out.keys.push_back(key);
    d.components.push_back(std::move(c));
  }
  for (const auto& e : out.elements) d.ids.push_back(poly_str(f, e));
  return out;
}

PolyDecompositionCheck verify_decomposition(const FiniteField& f, const PolyDecomposition& d,
                                            const Caps& caps) {
  PolyDecompositionCheck out;
  out.partition = check_partition(d.decomposition);
  if (!out.partition.ok) return out;
  const auto owner = component_of(d.decomposition);
  for (std::size_t a = 0; a < d.elements.size() && out.cross.ok; ++a) {
    for (std::size_t b = 0; b < d.elements.size(); ++b) {
      if (a == b || owner[a] == owner[b]) continue;
      if (d.divides(f, a, b)) {
        out.cross = {false, d.decomposition.ids[a] + " divides " + d.decomposition.ids[b] +
                                " across components",
                     ElementPair{a, b}};
        break;
      }
    }
  }
  const auto& comps = d.decomposition.components;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    ++out.iso_checked;
    IsoVerdict v;
    for (std::size_t i = 0; i < c.members.size() && v.ok; ++i) {
      Poly value = d.keys[ci];
      for (std::size_t g = 0; g < d.small.total(); ++g) {
        for (std::uint32_t e = 0; e < c.images[i].x[g]; ++e) {
          value = poly_mul(f, value, d.small.polys[g]);
        }
      }
      if (!(value == d.elements[c.members[i]])) {
        v = {false, "member is not M times its image", std::pair{i, i}};
      }
    }
    if (v.ok) {
      v = component_iso_check(
          c, *d.decomposition.weights,
          [&](std::size_t a, std::size_t b) { return d.divides(f, a, b); }, caps);
    }
    if (!v.ok) {
      out.iso_failed_component = ci;
      out.iso = std::move(v);
      break;
    }
  }
  return out;
}

// ----- bounds -----

PolyBound dimension_bound_poly(std::uint32_t q, int delta) {
  if (delta < 1) throw PreconditionError("bound needs delta >= 1");
  if (q < 2) throw PreconditionError("bound needs q >= 2");
  PolyBound b;
  b.q = q;
  b.delta = delta;
  const HighFloat lq = log(HighFloat(q));
  const HighFloat d(delta);
  b.cubic_branch = 172 * d * d * d * lq;
  b.minimum = b.cubic_branch;
  HighFloat r = 2 * d;
  if (delta >= 2) {
    const HighFloat ld = log(d);
    b.log_branch = 910 * pow(d * lq, 3) / (ld * ld);
    b.minimum = std::min(b.minimum, *b.log_branch);
    r = std::min(r, HighFloat("4.6") * d * lq / ld);
  }
  b.intermediate = 43 * r * r * d * lq;
  b.regime = q < static_cast<std::uint32_t>(delta) ? "q<delta" : "q>=delta";
  return b;
}

AppendixBReport verify_appendix_b(std::uint32_t q, int delta, const Caps& caps) {
  if (delta < 2) throw PreconditionError("the appendix bound needs delta >= 2");
  const FiniteField f(q);
  const auto irr = irreducibles_up_to_degree(f, delta, caps);
  AppendixBReport out;
  out.q = q;
  out.delta = delta;
  out.degrees = irr.degrees();
  std::sort(out.degrees.begin(), out.degrees.end());
  std::int64_t sum = 0;
  for (const int d : out.degrees) out.prefix_sums.push_back(sum += d);
  out.n = irr.total();
  out.q_delta = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(delta));
  out.n_bound_holds = cpp_int(out.n) <= out.q_delta;
  out.per_degree_holds = true;
  for (std::size_t i = 0; i < irr.counts.size(); ++i) {
    const int deg = static_cast<int>(i) + 1;
    if (cpp_int(irr.counts[i]) * deg > boost::multiprecision::pow(cpp_int(q), deg)) {
      out.per_degree_holds = false;
    }
  }
  auto m_at = [&](std::uint64_t count) -> std::int64_t {
    if (count == 0) return 0;
    return out.prefix_sums[std::min<std::uint64_t>(count, out.prefix_sums.size()) - 1];
  };
  out.r = HighFloat("4.6") * delta * log(HighFloat(q)) / log(HighFloat(delta));
  out.m_at_r = m_at(floor(out.r).convert_to<std::uint64_t>());
  out.r_branch_holds = out.m_at_r >= 2 * delta;
  out.m_at_two_delta = m_at(static_cast<std::uint64_t>(2 * delta));
  out.trivial_branch_holds = out.m_at_two_delta >= 2 * delta;
  return out;
}

PolyRealiser build_poly_realiser(const FiniteField& f, int d0, int delta, std::uint64_t seed,
                                 const Caps& caps) {
  PolyRealiser out{decompose_poly_poset(f, d0, delta, caps), {}, {}, {}, {}};
  out.merged = build_merged_realiser(out.decomposition.decomposition, seed, caps);
  if (delta >= 1) out.bound = dimension_bound_poly(f.q(), delta);
  try {
    out.poset = build_poly_poset(f, out.decomposition.elements, caps);
  } catch (const CapExceeded&) {
    return out;
  }
  out.certification = is_realiser(*out.poset, out.merged.extensions);
  return out;
}

// ----- reports -----

nlohmann::json to_json(const IrreducibleList& l, const FiniteField& f, bool list_polys) {
  nlohmann::json oracle = nlohmann::json::array();
  for (const auto& o : l.oracle) oracle.push_back(o.convert_to<std::uint64_t>());
  nlohmann::json j = {{"field", f.to_json()},
                      {"counts", l.counts},
                      {"necklace_oracle", oracle},
                      {"matches_oracle", l.matches_oracle},
                      {"total", l.total()},
                      {"tested", l.tested}};
  if (list_polys) {
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& p : l.polys) polys.push_back(poly_str(f, p));
    j["irreducibles"] = polys;
  }
  return j;
}

nlohmann::json to_json(const PolyBound& b) {
  nlohmann::json j = {{"q", b.q},
                      {"delta", b.delta},
                      {"cubic_branch", b.cubic_branch.convert_to<double>()},
                      {"minimum", b.minimum.convert_to<double>()},
                      {"intermediate", b.intermediate.convert_to<double>()},
                      {"regime", b.regime}};
  j["log_branch"] =
      b.log_branch ? nlohmann::json(b.log_branch->convert_to<double>()) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const AppendixBReport& r) {
  return {{"q", r.q},
          {"delta", r.delta},
          {"degrees", r.degrees},
          {"prefix_sums", r.prefix_sums},
          {"n", r.n},
          {"q_delta", r.q_delta.str()},
          {"n_bound_holds", r.n_bound_holds},
          {"per_degree_holds", r.per_degree_holds},
          {"r", r.r.convert_to<double>()},
          {"m_at_r", r.m_at_r},
          {"r_branch_holds", r.r_branch_holds},
          {"m_at_two_delta", r.m_at_two_delta},
          {"trivial_branch_holds", r.trivial_branch_holds},
          {"ok", r.ok()}};
}

nlohmann::json to_json(const PolyDecompositionCheck& c, const PolyDecomposition& d) {
  auto ids = [&](const std::optional<ElementPair>& w) {
    if (!w) return nlohmann::json(nullptr);
    return nlohmann::json{d.decomposition.ids[w->first], d.decomposition.ids[w->second]};
  };
  nlohmann::json j = {{"partition", c.partition.ok},
                      {"cross_component_incomparable", c.cross.ok},
                      {"iso_checked", c.iso_checked},
                      {"ok", c.ok()}};
  if (!c.partition.ok) j["partition_failure"] = {{"reason", c.partition.reason}, {"witness", ids(c.partition.witness)}};
  if (!c.cross.ok) j["cross_failure"] = {{"reason", c.cross.reason}, {"witness", ids(c.cross.witness)}};
  if (c.iso_failed_component) {
    const auto& comp = d.decomposition.components[*c.iso_failed_component];
    nlohmann::json w = nullptr;
    if (c.iso.witness) {
      w = {d.decomposition.ids[comp.members[c.iso.witness->first]],
           d.decomposition.ids[comp.members[c.iso.witness->second]]};
    }
    j["iso_failure"] = {{"M", comp.key}, {"reason", c.iso.reason}, {"witness", w}};
  }
  return j;
}

nlohmann::json to_json(const PolyRealiser& r) {
  nlohmann::json j = {{"params", r.decomposition.spec.to_json()},
                      {"elements", r.decomposition.elements.size()},
                      {"component_count", r.decomposition.decomposition.components.size()},
                      {"n", r.decomposition.small.total()},
                      {"degree_weights", r.decomposition.small.degrees()},
                      {"realiser", to_json(r.merged)},
                      {"size", r.size()}};
  j["bound"] = r.bound ? to_json(*r.bound) : nlohmann::json(nullptr);
  j["within_bound"] =
      r.bound ? nlohmann::json(HighFloat(r.size()) <= r.bound->minimum) : nlohmann::json(nullptr);
  if (r.certification) {
    j["certified"] = r.certification->ok;
    if (r.certification->witness && r.poset) {
      j["witness"] = {r.poset->id(r.certification->witness->first),
                      r.poset->id(r.certification->witness->second)};
    }
  } else {
    j["certified"] = nullptr;
  }
  return j;
}

}  // namespace posetdim
