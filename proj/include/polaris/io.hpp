// JSON (de)serialization for catalogs, polar data and weight sequences.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polaris/polar_data.hpp"

namespace polaris {

using Json = nlohmann::json;

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

// --- group marks ---------------------------------------------------------

inline Json mark_to_json(const GroupRef& g) {
  if (auto t = std::get_if<TorusSubgroup>(&g)) {
    Json gens = Json::array();
    for (const auto& v : t->generators()) gens.push_back(v);
    return Json{{"torus", gens}, {"ambient_rank", t->ambient_rank()}};
  }
  return std::get<NamedGroup>(g).name;
}

inline GroupRef mark_from_json(const Json& j) {
  if (j.is_string()) return NamedGroup{j.get<std::string>()};
  if (j.is_object() && j.contains("torus")) {
    const std::size_t n = j.at("ambient_rank").get<std::size_t>();
    IntMatrix gens;
    for (const auto& row : j.at("torus")) gens.push_back(row.get<IntVector>());
    return TorusSubgroup(n, gens);
  }
  throw Error("group mark must be a name or {\"torus\": [...], \"ambient_rank\": n}");
}

// --- catalog -------------------------------------------------------------

inline Json catalog_to_json(const Catalog& cat) {
  Json arr = Json::array();
  for (const auto& e : cat.entries()) {
    Json subs = Json::array(), coh = Json::array(), gen = Json::array();
    for (const auto& s : e.subgroups)
      subs.push_back({{"name", s.name}, {"quotient_is_sphere", s.quotient_is_sphere}, {"sphere_dim", s.sphere_dim}});
    for (const auto& c : e.coh1) coh.push_back({{"pair", {c.first, c.second}}, {"weyl_order", c.weyl_order}});
    for (const auto& g : e.generation) gen.push_back({{"generators", g.generators}, {"generated", g.generated}});
    arr.push_back({{"name", e.name}, {"dim", e.dim}, {"subgroups", subs}, {"coh1", coh}, {"generation", gen}});
  }
  return arr;
}

inline Catalog catalog_from_json(const Json& j) {
  if (!j.is_array()) throw Error("catalog must be a JSON array");
  std::vector<CatalogEntry> entries;
  for (const auto& e : j) {
    CatalogEntry c;
    c.name = e.at("name").get<std::string>();
    c.dim = e.at("dim").get<int>();
    for (const auto& s : e.value("subgroups", Json::array()))
      c.subgroups.push_back({s.at("name").get<std::string>(), s.value("quotient_is_sphere", false), s.value("sphere_dim", -1)});
    for (const auto& p : e.value("coh1", Json::array())) {
      const auto& pair = p.at("pair");
      if (pair.size() != 2) throw Error("catalog entry '" + c.name + "': coh1 pair must have two names");
      c.coh1.push_back({pair[0].get<std::string>(), pair[1].get<std::string>(), p.at("weyl_order").get<int>()});
    }
    for (const auto& g : e.value("generation", Json::array()))
      c.generation.push_back({g.at("generators").get<std::vector<std::string>>(), g.at("generated").get<std::string>()});
    entries.push_back(std::move(c));
  }
  return Catalog(std::move(entries));
}

// --- polar data ----------------------------------------------------------

inline Json pi_to_json(const PiSpec& p) {
  Json j;
  if (p.order) j["order"] = *p.order;
  else j["order"] = "infinite";
  j["name"] = p.name;
  if (p.orientable) j["orientable"] = *p.orientable;
  if (!p.normal_subgroups.empty()) j["normal_subgroups"] = p.normal_subgroups;
  return j;
}

inline PiSpec pi_from_json(const Json& j) {
  PiSpec p;
  const auto& o = j.at("order");
  if (o.is_string()) {
    if (o.get<std::string>() != "infinite") throw Error("pi.order must be a positive integer or \"infinite\"");
  } else {
    p.order = o.get<long long>();
  }
  p.name = j.value("name", "");
  if (j.contains("orientable")) p.orientable = j.at("orientable").get<bool>();
  if (j.contains("normal_subgroups")) p.normal_subgroups = j.at("normal_subgroups").get<std::map<std::string, bool>>();
  return p;
}

inline Json to_json(const PolarData& d) {
  const auto& c = d.chamber;
  Json ch;
  ch["dimension"] = c.dimension;
  if (c.curvature) ch["curvature"] = *c.curvature;
  else ch["curvature"] = "auto";
  Json sides = Json::array();
  for (const auto& s : c.sides) {
    Json js{{"id", s.id}};
    if (s.length) js["length"] = *s.length;
    sides.push_back(js);
  }
  ch["sides"] = sides;
  Json corners = Json::array();
  for (const auto& k : c.corners) corners.push_back({{"id", k.id}, {"order", k.order}});
  ch["corners"] = corners;
  if (c.length) ch["length"] = *c.length;

  Json graph;
  graph["principal"] = mark_to_json(d.graph.principal);
  graph["faces"] = Json::object();
  for (const auto& [id, g] : d.graph.faces) graph["faces"][id] = mark_to_json(g);
  graph["corners"] = Json::object();
  for (const auto& [id, g] : d.graph.corners) graph["corners"][id] = mark_to_json(g);

  Json j{{"chamber", ch}, {"graph", graph}};
  if (d.pi) j["pi"] = pi_to_json(*d.pi);
  return j;
}

inline PolarData polar_data_from_json(const Json& j) {
  PolarData d;
  try {
    const auto& ch = j.at("chamber");
    d.chamber.dimension = ch.at("dimension").get<int>();
    if (ch.contains("curvature")) {
      const auto& cv = ch.at("curvature");
      if (cv.is_string()) {
        if (cv.get<std::string>() != "auto") throw Error("curvature must be 1, 0, -1 or \"auto\"");
      } else {
        d.chamber.curvature = cv.get<int>();
      }
    }
    for (const auto& s : ch.value("sides", Json::array())) {
      Side side{s.at("id").get<std::string>(), std::nullopt};
      if (s.contains("length")) side.length = s.at("length").get<double>();
      d.chamber.sides.push_back(side);
    }
    for (const auto& k : ch.value("corners", Json::array()))
      d.chamber.corners.push_back({k.at("id").get<std::string>(), k.at("order").get<int>()});
    if (ch.contains("length")) d.chamber.length = ch.at("length").get<double>();

    const auto& g = j.at("graph");
    d.graph.principal = mark_from_json(g.at("principal"));
    const Json faces = g.value("faces", Json::object()), corners = g.value("corners", Json::object());
    for (const auto& [id, m] : faces.items()) d.graph.faces.emplace(id, mark_from_json(m));
    for (const auto& [id, m] : corners.items()) d.graph.corners.emplace(id, mark_from_json(m));
    if (j.contains("pi")) d.pi = pi_from_json(j.at("pi"));
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed polar data: ") + e.what());
  }
  return d;
}

inline PolarData load_polar_data(const std::string& path) { return polar_data_from_json(read_json_file(path)); }
inline void save_polar_data(const std::string& path, const PolarData& d) { write_text_file(path, dump(to_json(d))); }

inline Catalog load_catalog(const std::string& path) { return catalog_from_json(read_json_file(path)); }

// --- weight sequences ----------------------------------------------------

inline IntMatrix sequence_from_json(const Json& j) {
  if (!j.is_array()) throw Error("weight sequence must be a JSON array of integer vectors");
  IntMatrix out;
  for (const auto& v : j) out.push_back(v.get<IntVector>());
  return out;
}

inline Json sequence_to_json(const IntMatrix& seq) {
  Json arr = Json::array();
  for (const auto& v : seq) arr.push_back(v);
  return arr;
}

}  // namespace polaris
