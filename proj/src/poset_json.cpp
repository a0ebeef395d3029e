#include "posetdim/poset_json.hpp"

#include <cctype>
#include <fstream>

#include "posetdim/error.hpp"

namespace posetdim {

namespace {

std::string id_from_json(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("element identifiers must be strings or integers, got " +
                   v.dump());
}

bool canonical_integer(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  if (s == "-0") return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

nlohmann::json id_to_json(const std::string& s) {
  if (canonical_integer(s)) return std::stoll(s);
  return s;
}

}  // namespace

Poset poset_from_json(const nlohmann::json& j, const Caps& caps) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw InputError("poset JSON needs an \"elements\" array");
  }
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) elements.push_back(id_from_json(e));
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    if (!j["covers"].is_array()) throw InputError("\"covers\" must be an array");
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2) {
        throw InputError("each cover must be a pair [a, b]");
      }
      covers.emplace_back(id_from_json(c[0]), id_from_json(c[1]));
    }
  }
  return Poset::from_cover_relations(std::move(elements), covers, caps);
}

nlohmann::json poset_to_json(const Poset& p) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& id : p.ids()) elements.push_back(id_to_json(id));
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [a, b] : p.cover_relations()) {
    covers.push_back({id_to_json(p.id(a)), id_to_json(p.id(b))});
  }
  return {{"elements", elements}, {"covers", covers}};
}

nlohmann::json realiser_to_json(const Poset& p,
                                std::span<const LinearExtension> extensions) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : extensions) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto i : l.order()) row.push_back(id_to_json(p.id(i)));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<LinearExtension> realiser_from_json(const Poset& p,
                                                const nlohmann::json& j) {
  const nlohmann::json& rows =
      j.is_object() && j.contains("realiser") ? j["realiser"] : j;
  if (!rows.is_array()) throw InputError("realiser must be an array of orders");
  std::vector<LinearExtension> out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != p.size()) {
      throw InputError("each order must list every element exactly once");
    }
    std::vector<std::size_t> order;
    for (const auto& v : row) {
      const auto idx = p.index_of(id_from_json(v));
      if (!idx) throw InputError("unknown element " + v.dump() + " in order");
      order.push_back(*idx);
    }
    try {
      out.emplace_back(std::move(order));
    } catch (const InvalidExtension&) {
      throw InputError("order repeats an element");
    }
  }
  return out;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace posetdim
