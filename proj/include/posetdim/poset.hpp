#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posetdim/caps.hpp"

namespace posetdim {

using ElementPair = std::pair<std::size_t, std::size_t>;

/// Finite poset over opaque string identifiers. Elements are mapped to dense
/// indices 0..size()-1 at construction and the strict order is stored as a
/// transitively closed bit matrix. Immutable once built.
class Poset {
 public:
  Poset() = default;

  /// Transitive closure of the given cover digraph. Throws InputError on
  /// duplicate or unknown identifiers and CycleError if the closure is not
  /// antisymmetric.
  static Poset from_cover_relations(
      std::vector<std::string> elements,
      std::span<const std::pair<std::string, std::string>> covers,
      const Caps& caps = {});

  /// Builds the order from a predicate `less(i, j)` over element indices.
  /// The predicate need not be transitive; the closure is taken.
  static Poset from_predicate(
      std::vector<std::string> elements,
      const std::function<bool(std::size_t, std::size_t)>& less,
      const Caps& caps = {});

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Strict order a < b.
  bool less(std::size_t a, std::size_t b) const {
    return (rows_[a * stride_ + (b >> 6)] >> (b & 63)) & 1U;
  }
  bool comparable(std::size_t a, std::size_t b) const {
    return a == b || less(a, b) || less(b, a);
  }
  bool incomparable(std::size_t a, std::size_t b) const {
    return !comparable(a, b);
  }

  /// Ordered incomparable pairs (x, y), lexicographic by index.
  std::vector<ElementPair> incomparable_pairs() const;
  /// Covering pairs (a, b) of the transitive reduction, lexicographic.
  std::vector<ElementPair> cover_relations() const;

  bool is_chain() const;
  std::size_t relation_count() const;

  /// Bit rows: strictly-above set of each element. Row i has stride() words.
  std::span<const std::uint64_t> above_row(std::size_t i) const {
    return {rows_.data() + i * stride_, stride_};
  }
  std::span<const std::uint64_t> below_row(std::size_t i) const {
    return {cols_.data() + i * stride_, stride_};
  }
  std::size_t stride() const { return stride_; }

  /// Induced suborder on the given element indices (kept in that order).
  Poset restrict_to(std::span<const std::size_t> keep) const;

  /// Checks irreflexivity, antisymmetry, transitivity by direct scan.
  bool satisfies_order_axioms() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.ids_ == b.ids_ && a.rows_ == b.rows_;
  }

 private:
  Poset(std::vector<std::string> ids, std::vector<std::uint64_t> rows);
  void close_and_validate();
  void build_index();
  void build_columns();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> rows_;  // rows_[i] bit j  <=>  i < j
  std::vector<std::uint64_t> cols_;  // cols_[j] bit i  <=>  i < j
};

/// A total order on a poset's elements, stored as the sequence of element
/// indices from bottom to top. rank() gives the inverse map.
class LinearExtension {
 public:
  LinearExtension() = default;
  explicit LinearExtension(std::vector<std::size_t> order);

  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t rank(std::size_t element) const { return rank_[element]; }
  std::size_t size() const { return order_.size(); }

  /// True when the order is a permutation of 0..|p|-1 that respects p.
  bool is_extension_of(const Poset& p) const;

  friend bool operator==(const LinearExtension&, const LinearExtension&) = default;

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
};

struct RealiserVerdict {
  bool ok = true;
  /// An incomparable pair (x, y) with x below y in every extension.
  std::optional<ElementPair> witness;
};

/// Critical pairs (x, y): x minimal among elements incomparable to y and y
/// maximal among elements incomparable to x. Lexicographic by index.
std::vector<ElementPair> critical_pairs(const Poset& p);

/// Every incomparable pair is reversed by some extension. Throws
/// InvalidExtension if an input order is not a linear extension of p.
RealiserVerdict is_realiser(const Poset& p,
                            std::span<const LinearExtension> extensions);

/// Every critical pair is reversed by some extension.
RealiserVerdict reverses_all_critical_pairs(
    const Poset& p, std::span<const LinearExtension> extensions);

/// Some topological order of p (smallest available index first).
LinearExtension default_extension(const Poset& p);

/// Sorts p's elements by a strict weak comparator on indices and checks the
/// result is a linear extension.
LinearExtension extension_from_comparator(
    const Poset& p,
    const std::function<bool(std::size_t, std::size_t)>& before);

// ----- builders -----

Poset chain(std::size_t length, const Caps& caps = {});
Poset antichain(std::size_t size, const Caps& caps = {});
/// Product order; element ids are "(p,q)".
Poset product(const Poset& p, const Poset& q, const Caps& caps = {});
/// Disjoint union; ids are prefixed with "0:" and "1:".
Poset disjoint_union(const Poset& p, const Poset& q, const Caps& caps = {});
/// Subsets of {1..n} whose size lies in `layers`, ordered by inclusion.
/// Ids are "{}", "{1}", "{1,3}", ...
Poset hypercube_layers(int n, std::span<const int> layers,
                       const Caps& caps = {});
/// Subsets of {1..n}, i.e. all layers 0..n.
Poset hypercube(int n, const Caps& caps = {});

void check_relation_cap(std::size_t elements, const Caps& caps);

}  // namespace posetdim
