#pragma once

#include <optional>
#include <span>
#include <vector>

#include "posetdim/caps.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// True iff one linear extension can reverse every pair in `pairs`, i.e. the
/// order plus the arcs y < x for each (x, y) stays acyclic. Throws
/// PreconditionError if some pair is not incomparable.
bool is_reversible(const Poset& p, std::span<const ElementPair> pairs);

/// A linear extension reversing every pair in `pairs`, if one exists.
std::optional<LinearExtension> reversing_extension(
    const Poset& p, std::span<const ElementPair> pairs);

struct DimensionResult {
  /// Empty when the dimension exceeds max_d.
  std::optional<int> dimension;
  /// Realiser of exactly `dimension` extensions.
  std::vector<LinearExtension> realiser;
  int lower_bound = 1;
  std::size_t critical_pair_count = 0;
  std::uint64_t search_nodes = 0;
};

/// Dushnik-Miller dimension by branch and bound: critical pairs are placed,
/// lowest index first, into at most d reversible classes. Empty and one-element
/// posets are given dimension 1 by convention.
/// Hard limit of 64 elements on top of caps.exact_elements.
DimensionResult exact_dimension(const Poset& p, int max_d,
                                const Caps& caps = {});

}  // namespace posetdim
