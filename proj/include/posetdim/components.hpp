#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/multiset.hpp"
#include "posetdim/multiset_orders.hpp"
#include "posetdim/multiset_realiser.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// One block of a divisibility poset that splits into mutually incomparable
/// pieces, each isomorphic to a weighted multiset interval poset.
struct Component {
  std::string key;                   // the large part M, as text
  std::vector<std::size_t> members;  // element indices, ascending
  std::vector<Multiset> images;      // images[i] is the image of members[i]
  SizeInterval interval;             // [k_M, l_M]
};

/// Elements carry dense indices 0..ids.size()-1; components appear in
/// ascending key order and partition those indices.
struct Decomposition {
  std::vector<std::string> ids;
  std::shared_ptr<const WeightVector> weights;
  std::vector<Component> components;
  /// Common width l_M - k_M.
  SizeValue width;
};

using DividesFn = std::function<bool(std::size_t, std::size_t)>;

struct IsoVerdict {
  bool ok = true;
  std::string reason;
  /// Member positions (within the component) of an offending pair.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Exhaustive check that member -> image is a bijection onto the multiset
/// interval poset with a | b iff image(a) <= image(b) coordinatewise.
/// `divides` takes element indices.
IsoVerdict component_iso_check(const Component& c, const WeightVector& v,
                               const DividesFn& divides, const Caps& caps = {});

struct PartitionVerdict {
  bool ok = true;
  std::string reason;
  std::optional<ElementPair> witness;  // element indices
};

/// Every element lies in exactly one component.
PartitionVerdict check_partition(const Decomposition& d);

/// Element index -> component position.
std::vector<std::size_t> component_of(const Decomposition& d);

struct MergedRealiser {
  /// "theorem" (L1 and L2 per component) or "rotations" (n lexicographic
  /// rotations per component); "base" when the weight vector is empty.
  std::string route;
  std::size_t theorem_route_size = 0;
  std::size_t rotation_route_size = 0;
  std::optional<MultisetFamilyPlan> plan;
  ExtensionFamily family;  // the per-component family that was merged
  std::vector<LinearExtension> extensions;  // over element indices

  std::size_t size() const { return extensions.size(); }
};

/// Merges one component family into extensions of the whole poset:
/// extension i lists components in ascending order, each sorted by order i;
/// one extra extension uses order 0 with the components descending.
std::vector<LinearExtension> merge_component_orders(const Decomposition& d,
                                                    const ExtensionFamily& family);

/// Picks the smaller of the theorem route and the rotation route and
/// merges it.
MergedRealiser build_merged_realiser(const Decomposition& d, std::uint64_t seed,
                                     const Caps& caps = {});

nlohmann::json to_json(const MergedRealiser& m);
nlohmann::json component_summary(const Decomposition& d, std::size_t limit = 50);

}  // namespace posetdim
