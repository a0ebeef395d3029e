#include "posetdim/caps.hpp"

#include "json.hpp"
#include "posetdim/error.hpp"
#include "posetdim/poset_json.hpp"

namespace posetdim {

Caps load_caps(const std::string& path) {
  const auto j = read_json_file(path);
  if (!j.is_object()) throw InputError("caps file must hold a JSON object");
  Caps caps;
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::remove_reference_t<decltype(field)>>();
  };
  try {
    take("relation_cells", caps.relation_cells);
    take("exact_elements", caps.exact_elements);
    take("exact_critical_pairs", caps.exact_critical_pairs);
    take("multiset_elements", caps.multiset_elements);
    take("verification_cases", caps.verification_cases);
    take("interval_integers", caps.interval_integers);
    take("sieve_limit", caps.sieve_limit);
    take("poly_enumeration", caps.poly_enumeration);
    take("retry_limit", caps.retry_limit);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad caps value: ") + e.what());
  }
  return caps;
}

nlohmann::json caps_to_json(const Caps& caps) {
  return {{"relation_cells", caps.relation_cells},
          {"exact_elements", caps.exact_elements},
          {"exact_critical_pairs", caps.exact_critical_pairs},
          {"multiset_elements", caps.multiset_elements},
          {"verification_cases", caps.verification_cases},
          {"interval_integers", caps.interval_integers},
          {"sieve_limit", caps.sieve_limit},
          {"poly_enumeration", caps.poly_enumeration},
          {"retry_limit", caps.retry_limit}};
}

}  // namespace posetdim
