#include "posetdim/poset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& rows, std::size_t stride,
             std::size_t i, std::size_t j) {
  rows[i * stride + (j >> 6)] |= std::uint64_t{1} << (j & 63);
}

bool is_subset(std::span<const std::uint64_t> a,
               std::span<const std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

template <typename F>
void for_each_bit(std::span<const std::uint64_t> row, F&& f) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      f(w * 64 + static_cast<std::size_t>(b));
      bits &= bits - 1;
    }
  }
}

}  // namespace

void check_relation_cap(std::size_t elements, const Caps& caps) {
  const auto cells = static_cast<std::uint64_t>(elements) * elements;
  if (cells > caps.relation_cells) {
    std::ostringstream msg;
    msg << "poset with " << elements << " elements needs " << cells
        << " relation cells, cap is " << caps.relation_cells;
    throw CapExceeded(msg.str());
  }
}

Poset::Poset(std::vector<std::string> ids, std::vector<std::uint64_t> rows)
    : ids_(std::move(ids)), stride_(words_for(ids_.size())),
      rows_(std::move(rows)) {}

void Poset::build_index() {
  index_.clear();
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw InputError("duplicate element identifier '" + ids_[i] + "'");
    }
  }
}

void Poset::close_and_validate() {
  const std::size_t n = ids_.size();
  // Warshall over bit rows: if i < k then everything above k is above i.
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* rk = rows_.data() + k * stride_;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t* ri = rows_.data() + i * stride_;
      if ((ri[k >> 6] >> (k & 63)) & 1U) {
        for (std::size_t w = 0; w < stride_; ++w) ri[w] |= rk[w];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (less(i, i)) {
      throw CycleError("relation contains a cycle through '" + ids_[i] + "'");
    }
  }
  build_columns();
}

void Poset::build_columns() {
  const std::size_t n = ids_.size();
  cols_.assign(n * stride_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for_each_bit(above_row(i), [&](std::size_t j) { set_bit(cols_, stride_, j, i); });
  }
}

Poset Poset::from_cover_relations(
    std::vector<std::string> elements,
    std::span<const std::pair<std::string, std::string>> covers,
    const Caps& caps) {
  check_relation_cap(elements.size(), caps);
  Poset p(std::move(elements), {});
  p.rows_.assign(p.size() * p.stride_, 0);
  p.build_index();
  for (const auto& [a, b] : covers) {
    const auto ia = p.index_of(a);
    const auto ib = p.index_of(b);
    if (!ia || !ib) {
      throw InputError("cover (" + a + ", " + b +
                       ") names an unknown element");
    }
    if (*ia == *ib) throw CycleError("self-cover on '" + a + "'");
    set_bit(p.rows_, p.stride_, *ia, *ib);
  }
  p.close_and_validate();
  return p;
}

Poset Poset::from_predicate(
    std::vector<std::string> elements,
    const std::function<bool(std::size_t, std::size_t)>& less,
    const Caps& caps) {
  check_relation_cap(elements.size(), caps);
  Poset p(std::move(elements), {});
  const std::size_t n = p.size();
  p.rows_.assign(n * p.stride_, 0);
  p.build_index();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && less(i, j)) set_bit(p.rows_, p.stride_, i, j);
    }
  }
  p.close_and_validate();
  return p;
}

std::optional<std::size_t> Poset::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ElementPair> Poset::incomparable_pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t x = 0; x < size(); ++x) {
    for (std::size_t y = 0; y < size(); ++y) {
      if (x != y && incomparable(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

std::vector<ElementPair> Poset::cover_relations() const {
  std::vector<ElementPair> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for_each_bit(above_row(a), [&](std::size_t b) {
      // b covers a unless some c has a < c < b.
      const auto above_a = above_row(a);
      const auto below_b = below_row(b);
      for (std::size_t w = 0; w < stride_; ++w) {
        if (above_a[w] & below_b[w]) return;
      }
      out.emplace_back(a, b);
    });
  }
  return out;
}

bool Poset::is_chain() const {
  for (std::size_t x = 0; x < size(); ++x) {
    for (std::size_t y = x + 1; y < size(); ++y) {
      if (incomparable(x, y)) return false;
    }
  }
  return true;
}

std::size_t Poset::relation_count() const {
  std::size_t count = 0;
  for (const auto w : rows_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

Poset Poset::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (const auto i : keep) ids.push_back(ids_[i]);
  Poset p(std::move(ids), {});
  p.rows_.assign(p.size() * p.stride_, 0);
  p.build_index();
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (less(keep[a], keep[b])) set_bit(p.rows_, p.stride_, a, b);
    }
  }
  p.build_columns();
  return p;
}

bool Poset::satisfies_order_axioms() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    if (less(a, a)) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (less(a, b) && less(b, a)) return false;
      if (!less(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (less(b, c) && !less(a, c)) return false;
      }
    }
  }
  std::unordered_set<std::string> seen(ids_.begin(), ids_.end());
  return seen.size() == ids_.size();
}

LinearExtension::LinearExtension(std::vector<std::size_t> order)
    : order_(std::move(order)), rank_(order_.size(), order_.size()) {
  for (std::size_t pos = 0; pos < order_.size(); ++pos) {
    if (order_[pos] >= order_.size() || rank_[order_[pos]] != order_.size()) {
      throw InvalidExtension("linear extension is not a permutation");
    }
    rank_[order_[pos]] = pos;
  }
}

bool LinearExtension::is_extension_of(const Poset& p) const {
  if (order_.size() != p.size()) return false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    bool ok = true;
    for_each_bit(p.above_row(a), [&](std::size_t b) {
      if (rank_[a] > rank_[b]) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<ElementPair> critical_pairs(const Poset& p) {
  std::vector<ElementPair> out;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (x == y || !p.incomparable(x, y)) continue;
      // Everything below x is below y; everything above y is above x.
      if (is_subset(p.below_row(x), p.below_row(y)) &&
          is_subset(p.above_row(y), p.above_row(x))) {
        out.emplace_back(x, y);
      }
    }
  }
  return out;
}

namespace {

void require_extensions(const Poset& p,
                        std::span<const LinearExtension> extensions) {
  for (std::size_t i = 0; i < extensions.size(); ++i) {
    if (!extensions[i].is_extension_of(p)) {
      throw InvalidExtension("order #" + std::to_string(i) +
                             " is not a linear extension of the poset");
    }
  }
}

RealiserVerdict check_pairs(std::span<const ElementPair> pairs,
                            std::span<const LinearExtension> extensions) {
  for (const auto& [x, y] : pairs) {
    const bool reversed = std::any_of(
        extensions.begin(), extensions.end(),
        [&](const LinearExtension& l) { return l.rank(x) > l.rank(y); });
    if (!reversed) return {false, ElementPair{x, y}};
  }
  return {};
}

}  // namespace

RealiserVerdict is_realiser(const Poset& p,
                            std::span<const LinearExtension> extensions) {
  require_extensions(p, extensions);
  const auto pairs = p.incomparable_pairs();
  return check_pairs(pairs, extensions);
}

RealiserVerdict reverses_all_critical_pairs(
    const Poset& p, std::span<const LinearExtension> extensions) {
  require_extensions(p, extensions);
  const auto pairs = critical_pairs(p);
  return check_pairs(pairs, extensions);
}

LinearExtension default_extension(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      if (p.less(a, b)) ++indegree[b];
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto a = ready.top();
    ready.pop();
    order.push_back(a);
    for_each_bit(p.above_row(a), [&](std::size_t b) {
      if (--indegree[b] == 0) ready.push(b);
    });
  }
  return LinearExtension(std::move(order));
}

LinearExtension extension_from_comparator(
    const Poset& p,
    const std::function<bool(std::size_t, std::size_t)>& before) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), before);
  LinearExtension l(std::move(order));
  if (!l.is_extension_of(p)) {
    throw InvalidExtension("comparator order is not a linear extension");
  }
  return l;
}

Poset chain(std::size_t length, const Caps& caps) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < length; ++i) ids.push_back(std::to_string(i));
  return Poset::from_predicate(
      std::move(ids), [](std::size_t a, std::size_t b) { return a < b; }, caps);
}

Poset antichain(std::size_t size, const Caps& caps) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < size; ++i) ids.push_back(std::to_string(i));
  return Poset::from_predicate(
      std::move(ids), [](std::size_t, std::size_t) { return false; }, caps);
}

Poset product(const Poset& p, const Poset& q, const Caps& caps) {
  const std::size_t np = p.size();
  const std::size_t nq = q.size();
  if (np != 0 && nq > SIZE_MAX / np) throw CapExceeded("product size overflow");
  check_relation_cap(np * nq, caps);
  std::vector<std::string> ids;
  ids.reserve(np * nq);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      ids.push_back("(" + p.id(i) + "," + q.id(j) + ")");
    }
  }
  auto le = [](const Poset& s, std::size_t a, std::size_t b) {
    return a == b || s.less(a, b);
  };
  return Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) {
        const std::size_t pa = a / nq, qa = a % nq, pb = b / nq, qb = b % nq;
        return a != b && le(p, pa, pb) && le(q, qa, qb);
      },
      caps);
}

Poset disjoint_union(const Poset& p, const Poset& q, const Caps& caps) {
  const std::size_t np = p.size();
  check_relation_cap(np + q.size(), caps);
  std::vector<std::string> ids;
  for (const auto& id : p.ids()) ids.push_back("0:" + id);
  for (const auto& id : q.ids()) ids.push_back("1:" + id);
  return Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) {
        if (a < np && b < np) return p.less(a, b);
        if (a >= np && b >= np) return q.less(a - np, b - np);
        return false;
      },
      caps);
}

Poset hypercube_layers(int n, std::span<const int> layers, const Caps& caps) {
  if (n < 0 || n > 30) throw PreconditionError("hypercube n must be in [0,30]");
  for (const int k : layers) {
    if (k < 0 || k > n) {
      throw PreconditionError("layer " + std::to_string(k) +
                              " outside [0," + std::to_string(n) + "]");
    }
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    const int k = std::popcount(m);
    if (std::find(layers.begin(), layers.end(), k) != layers.end()) {
      masks.push_back(m);
      if (masks.size() * masks.size() > caps.relation_cells) {
        throw CapExceeded("hypercube layers exceed relation cap");
      }
    }
  }
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::string> ids;
  for (const auto m : masks) {
    std::string s = "{";
    for (int i = 0; i < n; ++i) {
      if (m & (1U << i)) {
        if (s.size() > 1) s += ",";
        s += std::to_string(i + 1);
      }
    }
    ids.push_back(s + "}");
  }
  return Poset::from_predicate(
      std::move(ids),
      [&](std::size_t a, std::size_t b) {
        return masks[a] != masks[b] && (masks[a] & ~masks[b]) == 0;
      },
      caps);
}

Poset hypercube(int n, const Caps& caps) {
  std::vector<int> layers(static_cast<std::size_t>(std::max(n, 0)) + 1);
  std::iota(layers.begin(), layers.end(), 0);
  return hypercube_layers(n, layers, caps);
}

}  // namespace posetdim
