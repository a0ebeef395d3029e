#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "posetdim/poset.hpp"

namespace posetdim {

/// `{"elements": [...], "covers": [[a, b], ...]}`. Elements may be strings
/// or integers; integers are stored as their decimal spelling.
Poset poset_from_json(const nlohmann::json& j, const Caps& caps = {});

/// Same shape, covers of the transitive reduction. Identifiers that are
/// canonical decimal integers are written back as JSON numbers.
nlohmann::json poset_to_json(const Poset& p);

/// `[[ids bottom to top], ...]`.
nlohmann::json realiser_to_json(const Poset& p,
                                std::span<const LinearExtension> extensions);
std::vector<LinearExtension> realiser_from_json(const Poset& p,
                                                const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace posetdim
