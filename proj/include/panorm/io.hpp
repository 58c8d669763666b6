#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "group.hpp"
#include "morphism.hpp"
#include "permutation.hpp"

namespace panorm {

using Json = nlohmann::json;

/// A permutation as a 1-based image array or a cycle string.
inline Permutation permutation_from_json(const Json& j, std::size_t degree) {
  if (j.is_string()) return parse_permutation(j.get<std::string>(), degree);
  if (!j.is_array()) throw Error("permutation must be an image array or a cycle string");
  std::vector<std::uint64_t> images;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw Error("image arrays must hold positive integers");
    images.push_back(v.get<std::uint64_t>());
  }
  if (images.size() != degree)
    throw Error("image array has length " + std::to_string(images.size()) + ", expected " +
                std::to_string(degree));
  return from_one_based(images);
}

inline Json permutation_to_json(const Permutation& p) { return to_one_based(p); }

inline std::vector<Permutation> permutations_from_json(const Json& j, std::size_t degree) {
  if (!j.is_array()) throw Error("expected a list of permutations");
  std::vector<Permutation> out;
  for (const auto& item : j) out.push_back(permutation_from_json(item, degree));
  return out;
}

inline PermGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw Error("group JSON needs \"degree\" and \"generators\"");
  if (!j["degree"].is_number_unsigned() || j["degree"].get<std::size_t>() == 0)
    throw Error("group degree must be a positive integer");
  const auto n = j["degree"].get<std::size_t>();
  std::string name = j.contains("name") ? j["name"].get<std::string>() : std::string{};
  return PermGroup(n, permutations_from_json(j["generators"], n), std::move(name));
}

inline Json group_to_json(const PermGroup& g, bool with_order = true) {
  Json j;
  j["degree"] = g.degree();
  Json gens = Json::array();
  for (const auto& s : g.generators()) gens.push_back(permutation_to_json(s));
  j["generators"] = std::move(gens);
  if (!g.name().empty()) j["name"] = g.name();
  if (with_order) j["order"] = to_decimal(g.order());
  return j;
}

inline SetMap set_map_from_json(const Json& j) {
  const auto m = j.at("target_size").get<std::size_t>();
  std::vector<Point> images;
  for (const auto& v : j.at("images")) {
    auto y = v.get<std::uint64_t>();
    if (y == 0 || y > m) throw Error("set map image out of range");
    images.push_back(static_cast<Point>(y - 1));
  }
  if (j.contains("source_size") && j["source_size"].get<std::size_t>() != images.size())
    throw Error("set map source_size does not match the image list");
  return SetMap(m, std::move(images));
}

inline Json set_map_to_json(const SetMap& f) {
  std::vector<std::uint64_t> images;
  for (Point y : f.images()) images.push_back(std::uint64_t{y} + 1);
  return {{"source_size", f.source_size()}, {"target_size", f.target_size()}, {"images", images}};
}

inline Json morphism_to_json(const PermutationMorphism& m) {
  Json images = Json::array();
  for (const auto& x : m.hom.images()) images.push_back(permutation_to_json(x));
  return {{"map", set_map_to_json(m.map)},
          {"generator_images", std::move(images)},
          {"target", group_to_json(m.target)}};
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("parse error in " + origin + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

inline PermGroup read_group_file(const std::string& path) {
  try {
    return group_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw Error("bad group file " + path + ": " + e.what());
  }
}

/// Socle generators: either a group JSON or a bare list of permutations.
inline std::vector<Permutation> read_generators_file(const std::string& path, std::size_t degree) {
  Json j = read_json_file(path);
  try {
    if (j.is_object()) {
      PermGroup g = group_from_json(j);
      if (g.degree() != degree) throw Error("socle file degree does not match the group");
      return g.generators();
    }
    return permutations_from_json(j, degree);
  } catch (const Json::exception& e) {
    throw Error("bad generator file " + path + ": " + e.what());
  }
}

}  // namespace panorm
