// Independent reference implementations and generators for tests. Nothing
// here calls the search or construction code under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "posetdim/poset.hpp"
#include "posetdim/rng.hpp"

namespace oracle {

/// Strict order as an adjacency matrix, closed by repeated relaxation.
using Matrix = std::vector<std::vector<bool>>;

inline Matrix closure(Matrix m) {
  const std::size_t n = m.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) {
            m[i][k] = true;
            changed = true;
          }
  }
  return m;
}

/// Random order on n elements: arcs i -> j (i < j) with probability
/// num / den, then closed.
inline Matrix random_order(posetdim::Rng& rng, std::size_t n, std::uint64_t num,
                           std::uint64_t den) {
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = rng.below(den) < num;
  return closure(m);
}

inline posetdim::Poset to_poset(const Matrix& m) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m.size(); ++i) ids.push_back("e" + std::to_string(i));
  return posetdim::Poset::from_predicate(
      ids, [&](std::size_t a, std::size_t b) { return static_cast<bool>(m[a][b]); });
}

/// Every permutation that respects the order.
inline std::vector<std::vector<std::size_t>> all_extensions(const posetdim::Poset& p) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i)
      for (std::size_t j = i + 1; j < perm.size() && ok; ++j)
        if (p.less(perm[j], perm[i])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Least d such that some d extensions reverse every incomparable pair,
/// by trying all d-subsets of all extensions. Tiny posets only.
inline int brute_dimension(const posetdim::Poset& p, int max_d = 4) {
  if (p.size() <= 1) return 1;
  const auto exts = all_extensions(p);
  std::vector<std::vector<std::size_t>> rank;
  for (const auto& e : exts) {
    std::vector<std::size_t> r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[e[i]] = i;
    rank.push_back(r);
  }
  const auto pairs = p.incomparable_pairs();
  if (pairs.empty()) return 1;
  for (int d = 1; d <= max_d; ++d) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(d));
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
      if (pos == pick.size()) {
        for (const auto& [x, y] : pairs) {
          bool rev = false;
          for (const auto k : pick) rev = rev || rank[k][x] > rank[k][y];
          if (!rev) return false;
        }
        return true;
      }
      for (std::size_t i = from; i < rank.size(); ++i) {
        pick[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return d;
  }
  return -1;
}

/// Critical pairs straight from the definition.
inline std::set<std::pair<std::size_t, std::size_t>> brute_critical_pairs(
    const posetdim::Poset& p) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = p.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !p.incomparable(x, y)) continue;
      bool ok = true;
      // Everything below x is below y, everything above y is above x.
      for (std::size_t z = 0; z < n && ok; ++z) {
        if (p.less(z, x) && !p.less(z, y)) ok = false;
        if (p.less(y, z) && !p.less(x, z)) ok = false;
      }
      if (ok) out.emplace(x, y);
    }
  return out;
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Multisets over n elements with cardinality in [k, l] (stars and bars).
inline std::uint64_t multisets_in_layers(std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  std::uint64_t total = 0;
  for (std::uint64_t c = k; c <= l; ++c) total += choose(c + n - 1, n - 1);
  return total;
}

}  // namespace oracle
