#include "posetdim/components.hpp"

#include <algorithm>
#include <map>

#include "posetdim/error.hpp"

namespace posetdim {

IsoVerdict component_iso_check(const Component& c, const WeightVector& v,
                               const DividesFn& divides, const Caps& caps) {
  IsoVerdict out;
  const std::size_t count = c.members.size();
  if (c.images.size() != count) {
    return {false, "image count differs from member count", std::nullopt};
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (static_cast<int>(c.images[i].ambient()) != v.size()) {
      return {false, "image has wrong ground set size", std::pair{i, i}};
    }
    if (!c.interval.contains(v.vsize(c.images[i]))) {
      return {false, "image v-size outside [k_M, l_M]", std::pair{i, i}};
    }
  }
  // Bijection onto the interval poset.
  std::map<Multiset, std::size_t> seen;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [it, fresh] = seen.emplace(c.images[i], i);
    if (!fresh) return {false, "two members share an image", std::pair{it->second, i}};
  }
  const auto target = enumerate_multisets(v, c.interval, caps);
  if (target.size() != count) {
    return {false,
            "interval poset has " + std::to_string(target.size()) + " elements, component has " +
                std::to_string(count),
            std::nullopt};
  }
  for (const auto& m : target) {
    if (!seen.contains(m)) return {false, "multiset " + m.str() + " has no preimage", std::nullopt};
  }
  // Order preserved and reflected.
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      const bool div = divides(c.members[i], c.members[j]);
      const bool sub = c.images[i].subset_of(c.images[j]);
      if (div != sub) {
        return {false, div ? "divisibility not preserved" : "divisibility not reflected",
                std::pair{i, j}};
      }
    }
  }
  return out;
}

std::vector<std::size_t> component_of(const Decomposition& d) {
  std::vector<std::size_t> owner(d.ids.size(), SIZE_MAX);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (const auto m : d.components[c].members) {
      if (m < owner.size()) owner[m] = c;
    }
  }
  return owner;
}

PartitionVerdict check_partition(const Decomposition& d) {
  std::vector<std::size_t> owner(d.ids.size(), SIZE_MAX);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (const auto m : d.components[c].members) {
      if (m >= owner.size()) return {false, "member index out of range", std::nullopt};
      if (owner[m] != SIZE_MAX) {
        return {false, "element " + d.ids[m] + " lies in two components", ElementPair{m, m}};
      }
      owner[m] = c;
    }
  }
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if (owner[i] == SIZE_MAX) {
      return {false, "element " + d.ids[i] + " lies in no component", ElementPair{i, i}};
    }
  }
  return {};
}

namespace {

std::vector<std::size_t> sorted_members(const Component& c, const MultisetOrder& order) {
  std::vector<std::size_t> pos(c.members.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    return order.compare(c.images[a], c.images[b]) < 0;
  });
  std::vector<std::size_t> out;
  out.reserve(pos.size());
  for (const auto p : pos) out.push_back(c.members[p]);
  return out;
}

LinearExtension concat(const Decomposition& d, const MultisetOrder& order, bool descending) {
  std::vector<std::size_t> seq;
  seq.reserve(d.ids.size());
  const std::size_t k = d.components.size();
  for (std::size_t step = 0; step < k; ++step) {
    const auto& c = d.components[descending ? k - 1 - step : step];
    const auto part = sorted_members(c, order);
    seq.insert(seq.end(), part.begin(), part.end());
  }
  return LinearExtension(std::move(seq));
}

}  // namespace

std::vector<LinearExtension> merge_component_orders(const Decomposition& d,
                                                    const ExtensionFamily& family) {
  ExtensionFamily f = family;
  if (f.orders.empty()) f.orders.push_back(std::make_shared<GradedLexOrder>());
  std::vector<LinearExtension> out;
  out.reserve(f.size() + 1);
  for (const auto& order : f.orders) out.push_back(concat(d, *order, false));
  out.push_back(concat(d, *f.orders.front(), true));
  return out;
}

MergedRealiser build_merged_realiser(const Decomposition& d, std::uint64_t seed,
                                     const Caps& caps) {
  MergedRealiser out;
  const int n = d.weights ? d.weights->size() : 0;
  if (n == 0 || d.components.empty()) {
    out.route = "base";
    out.extensions = merge_component_orders(d, out.family);
    return out;
  }
  out.plan = plan_multiset_family(*d.weights, d.components.front().interval, seed, caps);
  out.theorem_route_size = out.plan->family.size() + 1;
  out.rotation_route_size = static_cast<std::size_t>(n) + 1;
  if (out.theorem_route_size < out.rotation_route_size) {
    out.route = "theorem";
    out.family = out.plan->family;
  } else {
    out.route = "rotations";
    out.family = rotation_family(n, "rotation");
  }
  out.extensions = merge_component_orders(d, out.family);
  return out;
}

nlohmann::json to_json(const MergedRealiser& m) {
  nlohmann::json j = {{"route", m.route},
                      {"size", m.size()},
                      {"theorem_route_size", m.theorem_route_size},
                      {"rotation_route_size", m.rotation_route_size}};
  j["plan"] = m.plan ? to_json(*m.plan) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json component_summary(const Decomposition& d, std::size_t limit) {
  nlohmann::json list = nlohmann::json::array();
  std::size_t singletons = 0;
  std::size_t largest = 0;
  for (const auto& c : d.components) {
    if (c.members.size() == 1) ++singletons;
    largest = std::max(largest, c.members.size());
    if (list.size() < limit) {
      list.push_back({{"M", c.key},
                      {"size", c.members.size()},
                      {"k", c.interval.lo.str()},
                      {"l", c.interval.hi.str()}});
    }
  }
  return {{"elements", d.ids.size()},
          {"component_count", d.components.size()},
          {"singleton_components", singletons},
          {"largest_component", largest},
          {"n", d.weights ? d.weights->size() : 0},
          {"weights", d.weights ? d.weights->spec() : std::string("none")},
          {"width", d.width.str()},
          {"components", list},
          {"components_truncated", d.components.size() > limit}};
}

}  // namespace posetdim
