#pragma once

// Scenario configuration: strict JSON (schema_version 1, unknown fields
// rejected) for set descriptors, start points, stop rules and expected
// verification blocks.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "altproj/diagnostics.hpp"
#include "altproj/errors.hpp"
#include "altproj/iterate.hpp"
#include "altproj/sets.hpp"

namespace altproj {

using Json = nlohmann::ordered_json;

/// Seeded random start point: coordinates uniform in [-scale, scale] drawn
/// from mt19937_64(seed).
struct RandomStart {
  std::uint64_t seed = 0;
  Scalar scale = 1.0;
};

struct ExpectedBlock {
  std::optional<Scalar> distance;
  Scalar distance_tol = 1e-5;
  std::optional<bool> attained;
  std::optional<Point> v;
  Scalar v_tol = 1e-4;
  std::optional<TrajectoryClass> verdict_class;
  std::optional<Point> limit;
  Scalar limit_tol = 1e-6;
};

struct ScenarioConfig {
  std::string name;
  std::size_t dimension;
  ConvexSet set_a;
  ConvexSet set_b;
  std::variant<Point, RandomStart> start;
  StopRule stop;
  Algorithm algorithm = Algorithm::Alternate;
  std::optional<ExpectedBlock> expected;

  ScenarioConfig(std::string name_, std::size_t dim, ConvexSet a, ConvexSet b,
                 std::variant<Point, RandomStart> start_)
      : name(std::move(name_)),
        dimension(dim),
        set_a(std::move(a)),
        set_b(std::move(b)),
        start(std::move(start_)) {}
};

inline TrajectoryClass parse_trajectory_class(const std::string& s) {
  if (s == "ConvergedIntoIntersection")
    return TrajectoryClass::ConvergedIntoIntersection;
  if (s == "ConvergedAttainedGap") return TrajectoryClass::ConvergedAttainedGap;
  if (s == "DivergingNorm") return TrajectoryClass::DivergingNorm;
  if (s == "Undetermined") return TrajectoryClass::Undetermined;
  throw ConfigError("unknown verdict class: " + s);
}

namespace detail {

inline void check_fields(const Json& obj, const std::string& path,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional) {
  if (!obj.is_object())
    throw ConfigError(path + ": expected an object");
  for (const char* key : required) {
    if (!obj.contains(key))
      throw ConfigError(path + ": missing required field '" + key + "'");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : required) known = known || it.key() == key;
    for (const char* key : optional) known = known || it.key() == key;
    if (!known)
      throw ConfigError(path + "." + it.key() + ": unknown field");
  }
}

inline Scalar get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<Scalar>();
}

inline Point point_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<Scalar> c;
  c.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  try {
    return Point(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (Scalar v : p) arr.push_back(v);
  return arr;
}

}  // namespace detail

inline ConvexSet set_from_json(const Json& j, const std::string& path) {
  using detail::check_fields;
  using detail::get_number;
  using detail::point_from_json;

  if (!j.is_object() || !j.contains("type"))
    throw ConfigError(path + ": expected a set descriptor with a 'type' tag");
  std::string type = j.at("type").get<std::string>();
  try {
    if (type == "halfspace") {
      check_fields(j, path, {"type", "normal", "offset"}, {});
      return Halfspace(point_from_json(j.at("normal"), path + ".normal"),
                       get_number(j.at("offset"), path + ".offset"));
    }
    if (type == "hyperplane") {
      check_fields(j, path, {"type", "normal", "offset"}, {});
      return Hyperplane(point_from_json(j.at("normal"), path + ".normal"),
                        get_number(j.at("offset"), path + ".offset"));
    }
    if (type == "affine-subspace") {
      check_fields(j, path, {"type", "anchor", "basis"}, {});
      const Json& basis = j.at("basis");
      if (!basis.is_array())
        throw ConfigError(path + ".basis: expected an array of vectors");
      std::vector<Point> vecs;
      for (std::size_t i = 0; i < basis.size(); ++i)
        vecs.push_back(point_from_json(
            basis[i], path + ".basis[" + std::to_string(i) + "]"));
      return AffineSubspace(point_from_json(j.at("anchor"), path + ".anchor"),
                            std::move(vecs));
    }
    if (type == "box") {
      check_fields(j, path, {"type", "lower", "upper"}, {});
      return Box(point_from_json(j.at("lower"), path + ".lower"),
                 point_from_json(j.at("upper"), path + ".upper"));
    }
    if (type == "ball") {
      check_fields(j, path, {"type", "center", "radius"}, {});
      return Ball(point_from_json(j.at("center"), path + ".center"),
                  get_number(j.at("radius"), path + ".radius"));
    }
    if (type == "simplex") {
      check_fields(j, path, {"type", "dimension"}, {});
      if (!j.at("dimension").is_number_unsigned())
        throw ConfigError(path + ".dimension: expected a positive integer");
      return Simplex(j.at("dimension").get<std::size_t>());
    }
    if (type == "epigraph1d") {
      check_fields(j, path, {"type", "function"}, {});
      return Epigraph1D(
          epigraph_function(j.at("function").get<std::string>()));
    }
    if (type == "translate") {
      check_fields(j, path, {"type", "inner", "shift"}, {});
      return Translate(set_from_json(j.at("inner"), path + ".inner"),
                       point_from_json(j.at("shift"), path + ".shift"));
    }
  } catch (const std::invalid_argument& e) {  // also covers DimensionError
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".type: unknown set type '" + type + "'");
}

inline Json set_to_json(const ConvexSet& set) {
  using detail::point_to_json;
  Json j;
  j["type"] = set.kind();
  if (const auto* hs = set.as<Halfspace>()) {
    j["normal"] = point_to_json(hs->normal);
    j["offset"] = hs->offset;
  } else if (const auto* hp = set.as<Hyperplane>()) {
    j["normal"] = point_to_json(hp->normal);
    j["offset"] = hp->offset;
  } else if (const auto* a = set.as<AffineSubspace>()) {
    j["anchor"] = point_to_json(a->anchor);
    Json basis = Json::array();
    for (const Point& v : a->basis) basis.push_back(point_to_json(v));
    j["basis"] = basis;
  } else if (const auto* bx = set.as<Box>()) {
    j["lower"] = point_to_json(bx->lower);
    j["upper"] = point_to_json(bx->upper);
  } else if (const auto* bl = set.as<Ball>()) {
    j["center"] = point_to_json(bl->center);
    j["radius"] = bl->radius;
  } else if (const auto* s = set.as<Simplex>()) {
    j["dimension"] = s->dimension;
  } else if (const auto* e = set.as<Epigraph1D>()) {
    if (e->fn.name.empty())
      throw ConfigError("epigraph1d: function is not a registry entry");
    j["function"] = e->fn.name;
  } else if (const auto* t = set.as<Translate>()) {
    j["inner"] = set_to_json(*t->inner);
    j["shift"] = point_to_json(t->shift);
  }
  return j;
}

inline ScenarioConfig config_from_json(const Json& j) {
  using detail::check_fields;
  using detail::get_number;
  using detail::point_from_json;

  check_fields(j, "config",
               {"schema_version", "name", "dimension", "set_a", "set_b", "x0"},
               {"stop", "algorithm", "expected"});
  if (!j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != 1)
    throw ConfigError("config.schema_version: expected 1");
  std::string name = j.at("name").get<std::string>();
  if (!j.at("dimension").is_number_unsigned() ||
      j.at("dimension").get<std::size_t>() < 1)
    throw ConfigError("config.dimension: expected a positive integer");
  std::size_t dim = j.at("dimension").get<std::size_t>();

  ConvexSet a = set_from_json(j.at("set_a"), "config.set_a");
  ConvexSet b = set_from_json(j.at("set_b"), "config.set_b");

  std::variant<Point, RandomStart> start = Point::zero(dim);
  const Json& x0 = j.at("x0");
  if (x0.is_array()) {
    start = point_from_json(x0, "config.x0");
  } else if (x0.is_object()) {
    check_fields(x0, "config.x0", {"seed"}, {"scale"});
    RandomStart rs;
    rs.seed = x0.at("seed").get<std::uint64_t>();
    if (x0.contains("scale"))
      rs.scale = get_number(x0.at("scale"), "config.x0.scale");
    start = rs;
  } else {
    throw ConfigError("config.x0: expected an array or a {seed, scale} spec");
  }

  ScenarioConfig cfg(std::move(name), dim, std::move(a), std::move(b),
                     std::move(start));

  if (j.contains("stop")) {
    const Json& s = j.at("stop");
    check_fields(s, "config.stop", {},
                 {"max_pairs", "gap_stall_tol", "norm_explosion_factor"});
    if (s.contains("max_pairs")) {
      if (!s.at("max_pairs").is_number_unsigned())
        throw ConfigError("config.stop.max_pairs: expected a positive integer");
      cfg.stop.max_pairs = s.at("max_pairs").get<std::size_t>();
    }
    if (s.contains("gap_stall_tol"))
      cfg.stop.gap_stall_tol =
          get_number(s.at("gap_stall_tol"), "config.stop.gap_stall_tol");
    if (s.contains("norm_explosion_factor"))
      cfg.stop.norm_explosion_factor = get_number(
          s.at("norm_explosion_factor"), "config.stop.norm_explosion_factor");
    try {
      cfg.stop.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config.stop: ") + e.what());
    }
  }

  if (j.contains("algorithm")) {
    std::string algo = j.at("algorithm").get<std::string>();
    if (algo == "alternate") {
      cfg.algorithm = Algorithm::Alternate;
    } else if (algo == "dykstra") {
      cfg.algorithm = Algorithm::Dykstra;
    } else {
      throw ConfigError("config.algorithm: expected 'alternate' or 'dykstra'");
    }
  }

  if (j.contains("expected")) {
    const Json& e = j.at("expected");
    check_fields(e, "config.expected", {},
                 {"distance", "distance_tol", "attained", "v", "v_tol",
                  "verdict_class", "limit", "limit_tol"});
    ExpectedBlock eb;
    if (e.contains("distance"))
      eb.distance = get_number(e.at("distance"), "config.expected.distance");
    if (e.contains("distance_tol"))
      eb.distance_tol =
          get_number(e.at("distance_tol"), "config.expected.distance_tol");
    if (e.contains("attained")) {
      if (!e.at("attained").is_boolean())
        throw ConfigError("config.expected.attained: expected a boolean");
      eb.attained = e.at("attained").get<bool>();
    }
    if (e.contains("v")) eb.v = point_from_json(e.at("v"), "config.expected.v");
    if (e.contains("v_tol"))
      eb.v_tol = get_number(e.at("v_tol"), "config.expected.v_tol");
    if (e.contains("verdict_class"))
      eb.verdict_class =
          parse_trajectory_class(e.at("verdict_class").get<std::string>());
    if (e.contains("limit"))
      eb.limit = point_from_json(e.at("limit"), "config.expected.limit");
    if (e.contains("limit_tol"))
      eb.limit_tol = get_number(e.at("limit_tol"), "config.expected.limit_tol");
    cfg.expected = std::move(eb);
  }

  // dimension coherence across every embedded point
  if (cfg.set_a.dim() != dim || cfg.set_b.dim() != dim)
    throw ConfigError("config: set dimensions disagree with 'dimension'");
  if (const Point* p = std::get_if<Point>(&cfg.start)) {
    if (p->dim() != dim)
      throw ConfigError("config.x0: dimension disagrees with 'dimension'");
  }
  if (cfg.expected) {
    if (cfg.expected->v && cfg.expected->v->dim() != dim)
      throw ConfigError("config.expected.v: dimension mismatch");
    if (cfg.expected->limit && cfg.expected->limit->dim() != dim)
      throw ConfigError("config.expected.limit: dimension mismatch");
  }
  return cfg;
}

/// Parses a config from JSON text; syntax errors are reported with their
/// line number, semantic errors with the offending field path.
inline ScenarioConfig config_from_text(const std::string& text,
                                       const std::string& source = "config") {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(source + ":" + std::to_string(line) +
                      ": JSON parse error: " + e.what());
  }
  return config_from_json(j);
}

inline Json config_to_json(const ScenarioConfig& cfg) {
  Json j;
  j["schema_version"] = 1;
  j["name"] = cfg.name;
  j["dimension"] = cfg.dimension;
  j["set_a"] = set_to_json(cfg.set_a);
  j["set_b"] = set_to_json(cfg.set_b);
  if (const Point* p = std::get_if<Point>(&cfg.start)) {
    j["x0"] = detail::point_to_json(*p);
  } else {
    const RandomStart& rs = std::get<RandomStart>(cfg.start);
    j["x0"] = Json{{"seed", rs.seed}, {"scale", rs.scale}};
  }
  j["stop"] = Json{{"max_pairs", cfg.stop.max_pairs},
                   {"gap_stall_tol", cfg.stop.gap_stall_tol},
                   {"norm_explosion_factor", cfg.stop.norm_explosion_factor}};
  j["algorithm"] = to_string(cfg.algorithm);
  if (cfg.expected) {
    Json e;
    const ExpectedBlock& eb = *cfg.expected;
    if (eb.distance) {
      e["distance"] = *eb.distance;
      e["distance_tol"] = eb.distance_tol;
    }
    if (eb.attained) e["attained"] = *eb.attained;
    if (eb.v) {
      e["v"] = detail::point_to_json(*eb.v);
      e["v_tol"] = eb.v_tol;
    }
    if (eb.verdict_class) e["verdict_class"] = to_string(*eb.verdict_class);
    if (eb.limit) {
      e["limit"] = detail::point_to_json(*eb.limit);
      e["limit_tol"] = eb.limit_tol;
    }
    j["expected"] = e;
  }
  return j;
}

}  // namespace altproj
