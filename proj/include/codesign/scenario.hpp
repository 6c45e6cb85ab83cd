#pragma once

// Scenario files: maps with hidden targets, task profiles and the search space
// (planners, robot types, fleet size, battery grid) of one co-design study.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/catalog.hpp"
#include "codesign/evaluator.hpp"
#include "codesign/geometry.hpp"
#include "codesign/planners.hpp"

namespace codesign {

struct MapSpec {
  RectMap map;
  std::vector<Vec2> targets;
};

struct Scenario {
  std::string name = "scenario";
  Catalog catalog = default_catalog();
  std::vector<MapSpec> maps;
  std::vector<TaskProfile> tasks;
  std::vector<PlannerKind> planners = all_planners();
  std::vector<RobotType> types = all_robot_types();
  int max_per_type = 2;
  CapacityGrid capacity{400, 2};
  std::vector<std::string> batteries;  // empty: every technology of the catalog
  double dt = 0.1;
  double grid_res = 2.0;

  const MapSpec& map(const std::string& id) const {
    for (const auto& m : maps)
      if (m.map.id == id) return m;
    throw ConfigError("scenario '" + name + "' has no map '" + id + "'");
  }

  std::size_t task_index(const std::string& task) const {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].name == task) return i;
    throw ConfigError("scenario '" + name + "' has no task '" + task + "'");
  }

  std::vector<BatteryTechnology> battery_set() const {
    if (batteries.empty()) return catalog.batteries;
    std::vector<BatteryTechnology> out;
    for (const auto& b : batteries) out.push_back(catalog.battery(b));
    return out;
  }

  void validate() const {
    if (maps.empty()) throw ConfigError("scenario '" + name + "' defines no maps");
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (maps[j].map.id == maps[i].map.id) throw ConfigError("duplicate map id '" + maps[i].map.id + "'");
      for (const auto& t : maps[i].targets)
        if (!maps[i].map.rect.contains(t))
          throw ConfigError(fmt::format("target ({}, {}) lies outside map '{}'", t.x, t.y, maps[i].map.id));
    }
    for (const auto& t : tasks) {
      if (t.requirements.empty()) throw ConfigError("task '" + t.name + "' has no requirements");
      for (const auto& r : t.requirements) {
        const auto& m = map(r.map_id);
        if (r.metric == MetricKind::Detection && r.threshold > static_cast<double>(m.targets.size()))
          throw ConfigError(fmt::format("task '{}' asks for {} detections but map '{}' has {} targets", t.name,
                                        r.threshold, r.map_id, m.targets.size()));
      }
    }
    if (planners.empty()) throw ConfigError("scenario '" + name + "' allows no planner");
    if (types.empty()) throw ConfigError("scenario '" + name + "' allows no robot type");
    if (max_per_type < 1) throw ConfigError("max_per_type must be at least 1");
    if (!(dt > 0)) throw ConfigError("dt must be positive");
    if (!(grid_res > 0)) throw ConfigError("grid_res must be positive");
    (void)capacity.size();
    (void)battery_set();
  }
};

namespace detail {

// Unlike catalog entries, scenario fields are optional; only unknown keys are errors.
inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
}

}  // namespace detail

inline nlohmann::json to_json(const MapSpec& m) {
  nlohmann::json tg = nlohmann::json::array();
  for (const auto& t : m.targets) tg.push_back({t.x, t.y});
  return {{"id", m.map.id},
          {"width", m.map.width()},
          {"height", m.map.height()},
          {"origin", {m.map.rect.x0, m.map.rect.y0}},
          {"targets", tg}};
}

inline MapSpec map_from_json(const nlohmann::json& j) {
  detail::reject_unknown_keys(j, {"id", "width", "height", "origin", "targets"}, "map");
  Vec2 origin;
  if (j.contains("origin")) origin = {j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>()};
  MapSpec m{RectMap(j.at("id").get<std::string>(), j.at("width").get<double>(), j.at("height").get<double>(), origin),
            {}};
  if (j.contains("targets"))
    for (const auto& t : j.at("targets")) m.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
  return m;
}

inline nlohmann::json to_json(const Scenario& s) {
  nlohmann::json maps = nlohmann::json::array(), tasks = nlohmann::json::array(), planners = nlohmann::json::array(),
                 types = nlohmann::json::array();
  for (const auto& m : s.maps) maps.push_back(to_json(m));
  for (const auto& t : s.tasks) tasks.push_back(to_json(t));
  for (auto p : s.planners) planners.push_back(to_string(p));
  for (auto t : s.types) types.push_back(to_string(t));
  return {{"name", s.name},
          {"catalog", to_json(s.catalog)},
          {"maps", maps},
          {"tasks", tasks},
          {"planners", planners},
          {"types", types},
          {"max_per_type", s.max_per_type},
          {"capacity", {{"max_wh", s.capacity.max_wh}, {"step_wh", s.capacity.step_wh}}},
          {"batteries", s.batteries},
          {"dt", s.dt},
          {"grid_res", s.grid_res}};
}

/// `base_dir` resolves a catalog given as a relative file path.
inline Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  detail::reject_unknown_keys(j,
                              {"name", "catalog", "maps", "tasks", "planners", "types", "max_per_type", "capacity",
                          "batteries", "dt", "grid_res"},
                         "scenario");
  Scenario s;
  s.name = j.value("name", std::string("scenario"));
  if (j.contains("catalog")) {
    const auto& c = j.at("catalog");
    if (c.is_string()) {
      std::filesystem::path p = c.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      s.catalog = load_catalog(p.string());
    } else {
      s.catalog = catalog_from_json(c);
    }
  }
  for (const auto& m : j.at("maps")) s.maps.push_back(map_from_json(m));
  if (j.contains("tasks"))
    for (const auto& t : j.at("tasks")) s.tasks.push_back(task_from_json(t));
  if (j.contains("planners")) {
    s.planners.clear();
    for (const auto& p : j.at("planners")) s.planners.push_back(planner_from_string(p.get<std::string>()));
  }
  if (j.contains("types")) {
    s.types.clear();
    for (const auto& t : j.at("types")) s.types.push_back(robot_type_from_string(t.get<std::string>()));
  }
  s.max_per_type = j.value("max_per_type", s.max_per_type);
  if (j.contains("capacity")) {
    s.capacity.max_wh = j.at("capacity").value("max_wh", s.capacity.max_wh);
    s.capacity.step_wh = j.at("capacity").value("step_wh", s.capacity.step_wh);
  }
  if (j.contains("batteries")) s.batteries = j.at("batteries").get<std::vector<std::string>>();
  s.dt = j.value("dt", s.dt);
  s.grid_res = j.value("grid_res", s.grid_res);
  s.validate();
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario file '" + path + "': " + e.what());
  }
  return scenario_from_json(j, std::filesystem::path(path).parent_path());
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) { return fmt::format("{:016x}", h); }

/// Hash of everything that shapes one map's simulation outcome: the map, its
/// targets, the time step, the raster and the component tables.
inline std::string simulation_context_hash(const Scenario& s, const MapSpec& m) {
  nlohmann::json modules = {{"actuation", nlohmann::json::array()}, {"sensing", nlohmann::json::array()}};
  for (const auto& a : s.catalog.actuation) modules["actuation"].push_back(to_json(a));
  for (const auto& x : s.catalog.sensing) modules["sensing"].push_back(to_json(x));
  const nlohmann::json ctx = {{"map", to_json(m)}, {"dt", s.dt}, {"grid_res", s.grid_res}, {"modules", modules}};
  return hex64(fnv1a(ctx.dump()));
}

inline std::string scenario_hash(const Scenario& s) { return hex64(fnv1a(to_json(s).dump())); }

}  // namespace codesign
