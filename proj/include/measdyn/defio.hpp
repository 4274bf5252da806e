#pragma once

// Definition-file ingestion. A definition is one JSON document with top-level
// fields `space`, `system`, and optional `measures`. Exact values are written
// as {"num": int, "den": int}; plain JSON numbers are converted through their
// exact binary64 value; strings like "3/4" or "-0.25" also parse exactly.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "measdyn/measure.hpp"
#include "measdyn/space.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

using Json = nlohmann::ordered_json;

namespace defio {

inline const Json& field(const Json& j, const std::string& name, const std::string& where) {
  if (!j.is_object()) throw Error("definition field '" + where + "' must be an object");
  auto it = j.find(name);
  if (it == j.end())
    throw Error("definition field '" + where + "' is missing its '" + name + "' entry");
  return *it;
}

inline Rat number(const Json& j, const std::string& where) {
  if (j.is_object()) {
    const Json& num = field(j, "num", where);
    const Json& den = field(j, "den", where);
    const auto part = [&](const Json& p, const char* which) -> mpz_class {
      if (p.is_number_integer()) return mpz_class(std::to_string(p.get<long long>()));
      if (p.is_string()) return mpz_class(p.get<std::string>());
      throw Error("definition field '" + where + "." + which +
                  "' must be an integer or integer string");
    };
    const mpz_class den_v = part(den, "den");
    if (den_v == 0) throw Error("definition field '" + where + "' has denominator zero");
    Rat r(part(num, "num"), den_v);
    r.canonicalize();
    return r;
  }
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw Error("definition field '" + where + "' is not a number");
}

inline long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw Error("definition field '" + where + "' must be an integer");
  return static_cast<long>(j.get<long long>());
}

inline std::shared_ptr<const MetricSpace> space(const Json& j) {
  const std::string kind = field(j, "kind", "space").get<std::string>();
  if (kind == "finite") {
    std::vector<std::string> labels;
    for (const Json& l : field(j, "labels", "space"))
      labels.push_back(l.get<std::string>());
    if (j.contains("distances")) {
      std::vector<Rat> d;
      for (const Json& row : j["distances"])
        for (const Json& v : row) d.push_back(number(v, "space.distances"));
      return std::make_shared<MetricSpace>(
          MetricSpace::finite_table(std::move(labels), std::move(d)));
    }
    return std::make_shared<MetricSpace>(MetricSpace::finite(std::move(labels)));
  }
  if (kind == "interval-grid")
    return std::make_shared<MetricSpace>(
        MetricSpace::interval_grid(number(field(j, "lo", "space"), "space.lo"),
                                   number(field(j, "hi", "space"), "space.hi"),
                                   integer(field(j, "q", "space"), "space.q")));
  if (kind == "circle-grid")
    return std::make_shared<MetricSpace>(
        MetricSpace::circle_grid(integer(field(j, "q", "space"), "space.q")));
  if (kind == "compactified-integers")
    return std::make_shared<MetricSpace>(MetricSpace::compactified_integers(
        integer(field(j, "n_max", "space"), "space.n_max")));
  throw Error("unknown space kind '" + kind +
              "' (have finite, interval-grid, circle-grid, compactified-integers)");
}

inline MapSpec map_spec(const Json& j, const std::string& where) {
  const std::string kind = field(j, "kind", where).get<std::string>();
  if (kind == "identity") return map_identity();
  if (kind == "table") {
    std::vector<int> images;
    for (const Json& v : field(j, "images", where))
      images.push_back(static_cast<int>(integer(v, where + ".images")));
    return map_table(std::move(images));
  }
  if (kind == "piecewise-linear") {
    std::vector<std::pair<Rat, Rat>> nodes;
    for (const Json& node : field(j, "nodes", where)) {
      if (!node.is_array() || node.size() != 2)
        throw Error("definition field '" + where + ".nodes' needs [x, y] pairs");
      nodes.emplace_back(number(node[0], where + ".nodes"), number(node[1], where + ".nodes"));
    }
    return map_piecewise_linear(std::move(nodes));
  }
  if (kind == "quadratic")
    return map_quadratic(number(field(j, "a", where), where + ".a"),
                         number(field(j, "b", where), where + ".b"),
                         number(field(j, "c", where), where + ".c"),
                         j.contains("wrap") && j["wrap"].get<bool>());
  if (kind == "circle-rotation")
    return map_rotation(number(field(j, "angle", where), where + ".angle"));
  if (kind == "compactified-shift") return map_compactified_shift();
  if (kind == "monotone-inverse")
    return map_monotone_inverse(map_spec(field(j, "inner", where), where + ".inner"));
  if (kind == "composition") {
    std::vector<MapSpec> parts;
    long i = 0;
    for (const Json& part : field(j, "parts", where))
      parts.push_back(map_spec(part, where + ".parts[" + std::to_string(i++) + "]"));
    return map_compose(std::move(parts));
  }
  throw Error("unknown map kind '" + kind +
              "' (have identity, table, piecewise-linear, quadratic, circle-rotation, "
              "compactified-shift, monotone-inverse, composition)");
}

inline SystemDef system(const Json& j, const std::shared_ptr<const MetricSpace>& sp) {
  if (j.contains("zoo")) {
    ZooParams params;
    if (j.contains("q")) params.q = integer(j["q"], "system.q");
    if (j.contains("n_max")) params.n_max = integer(j["n_max"], "system.n_max");
    if (j.contains("depth")) params.depth = integer(j["depth"], "system.depth");
    if (j.contains("words")) params.words = integer(j["words"], "system.words");
    return build_zoo(j["zoo"].get<std::string>(), params);
  }
  const std::string gen = field(j, "generator", "system").get<std::string>();
  std::vector<MapSpec> maps;
  long i = 0;
  for (const Json& m : field(j, "maps", "system"))
    maps.push_back(map_spec(m, "system.maps[" + std::to_string(i++) + "]"));
  if (gen == "autonomous") {
    if (maps.size() != 1) throw Error("an autonomous system needs exactly one map");
    return autonomous_system(sp, std::move(maps[0]), "definition");
  }
  if (gen == "periodic") return periodic_system(sp, std::move(maps), "definition");
  if (gen == "listed") {
    MapSpec tail = j.contains("tail") ? map_spec(j["tail"], "system.tail") : map_identity();
    return listed_system(sp, std::move(maps), std::move(tail), "definition");
  }
  throw Error("unknown generator '" + gen + "' (have autonomous, periodic, listed)");
}

inline int point(const Json& j, const MetricSpace& sp, const std::string& where) {
  if (j.is_number_integer()) {
    const long idx = integer(j, where);
    if (idx < 0 || idx >= sp.size())
      throw Error("definition field '" + where + "' index " + std::to_string(idx) +
                  " is outside the space");
    return static_cast<int>(idx);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return sp.index_of(s);
    } catch (const Error&) {
      // fall through: treat the string as a coordinate to snap
    }
    return sp.snap(rat_from_string(s));
  }
  if (j.is_number_float() || j.is_object()) return sp.snap(number(j, where));
  throw Error("definition field '" + where + "' must name or locate a point");
}

inline DiscreteMeasure measure(const Json& j, const std::shared_ptr<const MetricSpace>& sp,
                               const std::string& where) {
  std::vector<Atom> atoms;
  long i = 0;
  for (const Json& a : field(j, "atoms", where)) {
    const std::string at = where + ".atoms[" + std::to_string(i++) + "]";
    atoms.push_back({point(field(a, "point", at), *sp, at + ".point"),
                     number(field(a, "weight", at), at + ".weight")});
  }
  return DiscreteMeasure(sp, std::move(atoms));
}

}  // namespace defio

struct Definition {
  std::shared_ptr<const MetricSpace> space;
  SystemDef system;
  std::map<std::string, DiscreteMeasure> measures;
};

inline Definition parse_definition(const Json& j) {
  if (!j.is_object()) throw Error("a definition file must hold one JSON object");
  Definition def;
  const Json& sys_j = defio::field(j, "system", "definition");
  if (sys_j.contains("zoo")) {
    def.system = defio::system(sys_j, nullptr);
    def.space = def.system.space;
    if (j.contains("space"))
      throw Error("a zoo system carries its own space; drop the 'space' entry");
  } else {
    def.space = defio::space(defio::field(j, "space", "definition"));
    def.system = defio::system(sys_j, def.space);
  }
  if (j.contains("measures")) {
    for (const auto& [name, body] : j["measures"].items())
      def.measures.emplace(name, defio::measure(body, def.space, "measures." + name));
  }
  return def;
}

inline Definition parse_definition_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("definition file is not valid JSON: ") + e.what());
  }
  return parse_definition(j);
}

}  // namespace measdyn
