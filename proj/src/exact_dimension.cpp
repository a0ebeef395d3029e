#include "posetdim/exact_dimension.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

constexpr std::size_t kMaxElements = 64;

// Transitively closed strict order on <= 64 elements: bit j of above[i] set
// iff i < j.
struct SmallOrder {
  std::array<std::uint64_t, kMaxElements> above{};
  std::size_t n = 0;

  static SmallOrder of(const Poset& p) {
    SmallOrder o;
    o.n = p.size();
    for (std::size_t i = 0; i < o.n; ++i) o.above[i] = p.above_row(i)[0];
    return o;
  }

  bool less(std::size_t a, std::size_t b) const { return (above[a] >> b) & 1U; }

  /// Adds y < x and re-closes. Returns false (leaving *this unchanged) when
  /// that would create a cycle.
  bool add_arc(std::size_t y, std::size_t x) {
    if (x == y || less(x, y)) return false;
    if (less(y, x)) return true;
    const std::uint64_t up = above[x] | (std::uint64_t{1} << x);
    for (std::size_t a = 0; a < n; ++a) {
      if (a == y || less(a, y)) above[a] |= up;
    }
    return true;
  }

  LinearExtension topological() const {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    // Elements below more things come earlier; closure makes this a valid
    // topological order: a < b implies below(a) is a strict subset of below(b).
    std::vector<int> below_count(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (less(a, b)) ++below_count[b];
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return below_count[a] < below_count[b];
    });
    return LinearExtension(std::move(order));
  }
};

void require_incomparable(const Poset& p, std::span<const ElementPair> pairs) {
  for (const auto& [x, y] : pairs) {
    if (x >= p.size() || y >= p.size() || !p.incomparable(x, y)) {
      throw PreconditionError("pair is not an incomparable pair of the poset");
    }
  }
}

class CoverSearch {
 public:
  CoverSearch(const SmallOrder& base, std::vector<ElementPair> pairs, int d)
      : base_(base), pairs_(std::move(pairs)), d_(d) {}

  bool run() {
    classes_.clear();
    assignment_.assign(pairs_.size(), -1);
    return place(0);
  }

  const std::vector<SmallOrder>& classes() const { return classes_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool fits(const SmallOrder& cls, const ElementPair& pr) const {
    const auto [x, y] = pr;
    return !(x == y || cls.less(x, y));
  }

  // Forward check: every unplaced pair must fit an existing class or a
  // fresh one.
  bool viable(std::size_t from) const {
    if (static_cast<int>(classes_.size()) < d_) return true;
    for (std::size_t i = from; i < pairs_.size(); ++i) {
      bool any = false;
      for (const auto& cls : classes_) {
        if (fits(cls, pairs_[i])) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  bool place(std::size_t idx) {
    ++nodes_;
    if (idx == pairs_.size()) return true;
    const auto [x, y] = pairs_[idx];
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      SmallOrder saved = classes_[c];
      if (!classes_[c].add_arc(y, x)) continue;
      if (viable(idx + 1) && place(idx + 1)) return true;
      classes_[c] = saved;
    }
    if (static_cast<int>(classes_.size()) < d_) {
      SmallOrder fresh = base_;
      fresh.add_arc(y, x);
      classes_.push_back(fresh);
      if (viable(idx + 1) && place(idx + 1)) return true;
      classes_.pop_back();
    }
    return false;
  }

  SmallOrder base_;
  std::vector<ElementPair> pairs_;
  int d_;
  std::vector<SmallOrder> classes_;
  std::vector<int> assignment_;
  std::uint64_t nodes_ = 0;
};

// Greedy clique in the "cannot share an extension" graph on critical pairs.
int incompatibility_lower_bound(const SmallOrder& base,
                                const std::vector<ElementPair>& pairs) {
  std::vector<std::size_t> clique;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool clashes_with_all = true;
    for (const auto j : clique) {
      SmallOrder o = base;
      if (o.add_arc(pairs[i].second, pairs[i].first) &&
          o.add_arc(pairs[j].second, pairs[j].first)) {
        clashes_with_all = false;
        break;
      }
    }
    if (clashes_with_all) clique.push_back(i);
  }
  return static_cast<int>(clique.size());
}

}  // namespace

bool is_reversible(const Poset& p, std::span<const ElementPair> pairs) {
  return reversing_extension(p, pairs).has_value();
}

std::optional<LinearExtension> reversing_extension(
    const Poset& p, std::span<const ElementPair> pairs) {
  require_incomparable(p, pairs);
  // Kahn's algorithm on the order plus reversed arcs.
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (p.less(a, b)) {
        succ[a].push_back(b);
        ++indegree[b];
      }
    }
  }
  for (const auto& [x, y] : pairs) {
    succ[y].push_back(x);
    ++indegree[x];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = n; i-- > 0;) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto a = ready.back();
    ready.pop_back();
    order.push_back(a);
    for (const auto b : succ[a]) {
      if (--indegree[b] == 0) ready.push_back(b);
    }
  }
  if (order.size() != n) return std::nullopt;
  return LinearExtension(std::move(order));
}

DimensionResult exact_dimension(const Poset& p, int max_d, const Caps& caps) {
  if (max_d < 1) throw PreconditionError("max_d must be positive");
  if (p.size() > caps.exact_elements || p.size() > kMaxElements) {
    throw CapExceeded("exact dimension search limited to " +
                      std::to_string(std::min(caps.exact_elements, kMaxElements)) +
                      " elements, poset has " + std::to_string(p.size()));
  }
  DimensionResult result;
  const auto pairs = critical_pairs(p);
  result.critical_pair_count = pairs.size();
  if (pairs.size() > caps.exact_critical_pairs) {
    throw CapExceeded("exact dimension search limited to " +
                      std::to_string(caps.exact_critical_pairs) +
                      " critical pairs, poset has " +
                      std::to_string(pairs.size()));
  }
  if (pairs.empty()) {
    // Chain (including empty and singleton posets).
    result.lower_bound = 1;
    result.dimension = 1;
    result.realiser.push_back(default_extension(p));
    return result;
  }
  const SmallOrder base = SmallOrder::of(p);
  result.lower_bound = std::max(2, incompatibility_lower_bound(base, pairs));
  for (int d = result.lower_bound; d <= max_d; ++d) {
    CoverSearch search(base, pairs, d);
    const bool found = search.run();
    result.search_nodes += search.nodes();
    if (!found) continue;
    result.dimension = d;
    for (const auto& cls : search.classes()) {
      result.realiser.push_back(cls.topological());
    }
    // A cover may use fewer classes only if d were not minimal; pad anyway.
    while (static_cast<int>(result.realiser.size()) < d) {
      result.realiser.push_back(base.topological());
    }
    return result;
  }
  return result;
}

}  // namespace posetdim
