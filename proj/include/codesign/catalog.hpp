#pragma once

// Component catalog (batteries, actuation, sensing) and single-robot designs.

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/errors.hpp"
#include "codesign/order.hpp"

namespace codesign {

enum class RobotType { AerialM, AerialL, Ground };
enum class PathType { RS, DD };

inline const std::vector<RobotType>& all_robot_types() {
  static const std::vector<RobotType> types{RobotType::AerialM, RobotType::AerialL, RobotType::Ground};
  return types;
}

inline std::string to_string(RobotType t) {
  switch (t) {
    case RobotType::AerialM: return "AerialM";
    case RobotType::AerialL: return "AerialL";
    case RobotType::Ground: return "Ground";
  }
  return "?";
}

inline RobotType robot_type_from_string(const std::string& s) {
  for (auto t : all_robot_types())
    if (to_string(t) == s) return t;
  throw ConfigError("unknown robot type '" + s + "'");
}

inline std::string to_string(PathType p) { return p == PathType::RS ? "RS" : "DD"; }

inline PathType path_type_from_string(const std::string& s) {
  if (s == "RS") return PathType::RS;
  if (s == "DD") return PathType::DD;
  throw ConfigError("unknown path type '" + s + "'");
}

struct BatteryTechnology {
  std::string name;
  double rho = 0;    // Wh/kg
  double alpha = 0;  // Wh/USD
  friend bool operator==(const BatteryTechnology&, const BatteryTechnology&) = default;
};

struct ActuationModule {
  RobotType type = RobotType::AerialM;
  std::string variant;
  double v_max = 0;          // m/s
  double a_lat_max = 0;      // m/s^2
  double a_lon_max = 0;      // m/s^2
  double r_turn = 0;         // m
  double theta_dot_max = 0;  // rad/s
  double c_vel = 0;          // W s^2/m^2
  double c_acc = 0;          // W s^2/m
  double m_max = 0;          // kg payload
  double p_idle = 0;         // W
  double cost = 0;           // USD
  double mass = 0;           // kg
  PathType path_type = PathType::RS;
  friend bool operator==(const ActuationModule&, const ActuationModule&) = default;
};

struct SensingModule {
  RobotType type = RobotType::AerialM;
  std::string variant;
  double r_sensing = 0;    // m
  double lambda_base = 0;  // 1/s
  double sigma_d = 0;      // m
  double beta_v = 0;       // s/m
  double p_req = 0;        // W
  double cost = 0;         // USD
  double mass = 0;         // kg
  friend bool operator==(const SensingModule&, const SensingModule&) = default;
};

struct Catalog {
  std::vector<BatteryTechnology> batteries;
  std::vector<ActuationModule> actuation;
  std::vector<SensingModule> sensing;

  const BatteryTechnology& battery(const std::string& name) const {
    for (const auto& b : batteries)
      if (b.name == name) return b;
    throw ConfigError("unknown battery technology '" + name + "'");
  }

  const ActuationModule& actuation_module(RobotType t, const std::string& variant) const {
    for (const auto& a : actuation)
      if (a.type == t && a.variant == variant) return a;
    throw ConfigError("unknown actuation module " + to_string(t) + "." + variant);
  }

  const SensingModule& sensing_module(RobotType t, const std::string& variant) const {
    for (const auto& s : sensing)
      if (s.type == t && s.variant == variant) return s;
    throw ConfigError("unknown sensing module " + to_string(t) + "." + variant);
  }

  std::vector<ActuationModule> actuation_for(RobotType t) const {
    std::vector<ActuationModule> out;
    for (const auto& a : actuation)
      if (a.type == t) out.push_back(a);
    return out;
  }

  std::vector<SensingModule> sensing_for(RobotType t) const {
    std::vector<SensingModule> out;
    for (const auto& s : sensing)
      if (s.type == t) out.push_back(s);
    return out;
  }

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

/// The built-in component tables.
inline Catalog default_catalog() {
  Catalog c;
  c.batteries = {{"LiPo", 250, 2.50}, {"LCO", 195, 2.84}, {"LMO", 150, 2.84}, {"NiH2", 45, 10.5},
                 {"NiMH", 100, 3.41}, {"LFP", 90, 1.50},  {"NiCad", 30, 0.50}, {"SLA", 30, 7.0}};
  using R = RobotType;
  c.actuation = {
      {R::AerialM, "V1", 10, 1.5, 2, 1, 1, 4, 7, 5, 50, 500, 1, PathType::RS},
      {R::AerialM, "V2", 13, 1.5, 2, 1, 1, 5, 9, 7, 70, 600, 1.5, PathType::RS},
      {R::AerialL, "V1", 20, 2, 4, 3, 1.5, 10, 20, 15, 250, 4000, 4, PathType::RS},
      {R::AerialL, "V2", 16, 1.5, 3, 3, 1.5, 8, 14, 10, 200, 3500, 3.5, PathType::RS},
      {R::Ground, "V1", 5, 1.5, 1, 1, 1, 1, 3, 100, 150, 1500, 10, PathType::RS},
      {R::Ground, "V2", 7, 1.5, 1, 1, 1, 3, 5, 100, 200, 1750, 12, PathType::RS},
  };
  c.sensing = {
      {R::AerialM, "imp1", 12, 0.95, 8, 0.004, 20, 100, 0.4},
      {R::AerialL, "imp1", 40, 0.98, 30, 0.02, 68, 200, 1.0},
      {R::Ground, "imp1", 30, 0.99, 26, 0.02, 35, 150, 2.5},
  };
  return c;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
  for (const auto& key : allowed)
    if (!j.contains(key)) throw ConfigError("missing field '" + key + "' in " + where);
}

template <class T>
T get_field(const nlohmann::json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad field '" + std::string(key) + "' in " + where + ": " + e.what());
  }
}

}  // namespace detail

inline nlohmann::json to_json(const BatteryTechnology& b) {
  return {{"name", b.name}, {"rho", b.rho}, {"alpha", b.alpha}};
}

inline nlohmann::json to_json(const ActuationModule& a) {
  return {{"robot_type", to_string(a.type)}, {"variant", a.variant},   {"v_max", a.v_max},
          {"a_lat_max", a.a_lat_max},        {"a_lon_max", a.a_lon_max}, {"r_turn", a.r_turn},
          {"theta_dot_max", a.theta_dot_max}, {"c_vel", a.c_vel},      {"c_acc", a.c_acc},
          {"m_max", a.m_max},                {"p_idle", a.p_idle},     {"cost", a.cost},
          {"mass", a.mass},                  {"path_type", to_string(a.path_type)}};
}

inline nlohmann::json to_json(const SensingModule& s) {
  return {{"robot_type", to_string(s.type)}, {"variant", s.variant}, {"r_sensing", s.r_sensing},
          {"lambda_base", s.lambda_base},    {"sigma_d", s.sigma_d}, {"beta_v", s.beta_v},
          {"p_req", s.p_req},                {"cost", s.cost},       {"mass", s.mass}};
}

inline BatteryTechnology battery_from_json(const nlohmann::json& j) {
  const std::string w = "battery";
  detail::reject_unknown(j, {"name", "rho", "alpha"}, w);
  BatteryTechnology b{detail::get_field<std::string>(j, "name", w), detail::get_field<double>(j, "rho", w),
                      detail::get_field<double>(j, "alpha", w)};
  if (!(b.rho > 0) || !(b.alpha > 0)) throw ConfigError("battery '" + b.name + "' needs rho, alpha > 0");
  return b;
}

inline ActuationModule actuation_from_json(const nlohmann::json& j) {
  const std::string w = "actuation module";
  detail::reject_unknown(j,
                         {"robot_type", "variant", "v_max", "a_lat_max", "a_lon_max", "r_turn",
                          "theta_dot_max", "c_vel", "c_acc", "m_max", "p_idle", "cost", "mass",
                          "path_type"},
                         w);
  ActuationModule a;
  a.type = robot_type_from_string(detail::get_field<std::string>(j, "robot_type", w));
  a.variant = detail::get_field<std::string>(j, "variant", w);
  a.v_max = detail::get_field<double>(j, "v_max", w);
  a.a_lat_max = detail::get_field<double>(j, "a_lat_max", w);
  a.a_lon_max = detail::get_field<double>(j, "a_lon_max", w);
  a.r_turn = detail::get_field<double>(j, "r_turn", w);
  a.theta_dot_max = detail::get_field<double>(j, "theta_dot_max", w);
  a.c_vel = detail::get_field<double>(j, "c_vel", w);
  a.c_acc = detail::get_field<double>(j, "c_acc", w);
  a.m_max = detail::get_field<double>(j, "m_max", w);
  a.p_idle = detail::get_field<double>(j, "p_idle", w);
  a.cost = detail::get_field<double>(j, "cost", w);
  a.mass = detail::get_field<double>(j, "mass", w);
  a.path_type = path_type_from_string(detail::get_field<std::string>(j, "path_type", w));
  for (double v : {a.v_max, a.a_lat_max, a.a_lon_max, a.r_turn, a.theta_dot_max, a.c_vel, a.c_acc,
                   a.m_max, a.p_idle, a.cost, a.mass})
    if (!(v >= 0)) throw ConfigError("negative field in actuation module " + a.variant);
  if (a.path_type == PathType::RS && !(a.r_turn > 0))
    throw ConfigError("RS actuation module " + a.variant + " needs r_turn > 0");
  return a;
}

inline SensingModule sensing_from_json(const nlohmann::json& j) {
  const std::string w = "sensing module";
  detail::reject_unknown(
      j, {"robot_type", "variant", "r_sensing", "lambda_base", "sigma_d", "beta_v", "p_req", "cost", "mass"}, w);
  SensingModule s;
  s.type = robot_type_from_string(detail::get_field<std::string>(j, "robot_type", w));
  s.variant = detail::get_field<std::string>(j, "variant", w);
  s.r_sensing = detail::get_field<double>(j, "r_sensing", w);
  s.lambda_base = detail::get_field<double>(j, "lambda_base", w);
  s.sigma_d = detail::get_field<double>(j, "sigma_d", w);
  s.beta_v = detail::get_field<double>(j, "beta_v", w);
  s.p_req = detail::get_field<double>(j, "p_req", w);
  s.cost = detail::get_field<double>(j, "cost", w);
  s.mass = detail::get_field<double>(j, "mass", w);
  if (!(s.r_sensing > 0) || !(s.lambda_base > 0) || !(s.sigma_d > 0) || !(s.beta_v >= 0))
    throw ConfigError("sensing module " + s.variant + " has out-of-range parameters");
  return s;
}

inline nlohmann::json to_json(const Catalog& c) {
  nlohmann::json j;
  j["batteries"] = nlohmann::json::array();
  j["actuation_modules"] = nlohmann::json::array();
  j["sensing_modules"] = nlohmann::json::array();
  for (const auto& b : c.batteries) j["batteries"].push_back(to_json(b));
  for (const auto& a : c.actuation) j["actuation_modules"].push_back(to_json(a));
  for (const auto& s : c.sensing) j["sensing_modules"].push_back(to_json(s));
  return j;
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  detail::reject_unknown(j, {"batteries", "actuation_modules", "sensing_modules"}, "catalog");
  Catalog c;
  for (const auto& b : j.at("batteries")) c.batteries.push_back(battery_from_json(b));
  for (const auto& a : j.at("actuation_modules")) c.actuation.push_back(actuation_from_json(a));
  for (const auto& s : j.at("sensing_modules")) c.sensing.push_back(sensing_from_json(s));
  return c;
}

inline Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open catalog file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("catalog " + path + ": " + e.what());
  }
  return catalog_from_json(j);
}

// ---------------------------------------------------------------------------
// Robot designs

struct RobotDesign {
  ActuationModule actuation;
  SensingModule sensing;
  BatteryTechnology battery;
  double capacity = 0;  // Wh
  bool null = false;

  RobotType type() const { return actuation.type; }

  /// Stable key, e.g. `AerialM.V1.imp1.NiMH@231.10`.
  std::string signature() const {
    if (null) return to_string(actuation.type) + ".null";
    return fmt::format("{}.{}.{}.{}@{:.2f}", to_string(actuation.type), actuation.variant,
                       sensing.variant, battery.name, capacity);
  }

  /// Key of the parts that shape motion and sensing (no battery).
  std::string motion_signature() const {
    return fmt::format("{}.{}.{}", to_string(actuation.type), actuation.variant, sensing.variant);
  }

  friend bool operator==(const RobotDesign&, const RobotDesign&) = default;
};

inline RobotDesign null_robot(RobotType t) {
  RobotDesign d;
  d.actuation.type = t;
  d.sensing.type = t;
  d.null = true;
  return d;
}

inline double battery_mass(const BatteryTechnology& b, double capacity) { return capacity / b.rho; }

inline bool mass_feasible(const ActuationModule& a, const SensingModule& s, const BatteryTechnology& b,
                          double capacity) {
  return battery_mass(b, capacity) <= a.m_max - s.mass;
}

/// Largest capacity the payload budget admits; negative when the sensor alone is too heavy.
inline double max_feasible_capacity(const ActuationModule& a, const SensingModule& s,
                                    const BatteryTechnology& b) {
  return (a.m_max - s.mass) * b.rho;
}

inline void check_design(const RobotDesign& d) {
  if (d.null) return;
  if (d.actuation.type != d.sensing.type)
    throw InfeasibleDesign("actuation " + to_string(d.actuation.type) + " cannot carry sensing for " +
                           to_string(d.sensing.type));
  if (!(d.capacity >= 0)) throw InfeasibleDesign("negative capacity in " + d.signature());
  if (!mass_feasible(d.actuation, d.sensing, d.battery, d.capacity))
    throw InfeasibleDesign(fmt::format("{}: battery {:.3f} kg + sensor {:.3f} kg exceeds payload {:.3f} kg",
                                       d.signature(), battery_mass(d.battery, d.capacity), d.sensing.mass,
                                       d.actuation.m_max));
}

inline double robot_cost(const RobotDesign& d) {
  if (d.null) return 0.0;
  check_design(d);
  return d.actuation.cost + d.sensing.cost + d.capacity / d.battery.alpha;
}

struct RobotInterface {
  bool null = false;
  // dynamical
  double v_max = 0, a_lat_max = 0, a_lon_max = 0, theta_dot_max = 0, r_turn = 0, c_vel = 0, c_acc = 0;
  PathType path_type = PathType::RS;
  // sensing
  double r_sensing = 0, lambda_base = 0, sigma_d = 0, beta_v = 0;
  double capacity = 0;
  double cost = 0;
  double power_idle_total = 0;
};

inline RobotInterface robot_interface(const RobotDesign& d) {
  RobotInterface i;
  if (d.null) {
    i.null = true;
    return i;
  }
  check_design(d);
  const auto& a = d.actuation;
  const auto& s = d.sensing;
  i.v_max = a.v_max;
  i.a_lat_max = a.a_lat_max;
  i.a_lon_max = a.a_lon_max;
  i.theta_dot_max = a.theta_dot_max;
  i.r_turn = a.r_turn;
  i.c_vel = a.c_vel;
  i.c_acc = a.c_acc;
  i.path_type = a.path_type;
  i.r_sensing = s.r_sensing;
  i.lambda_base = s.lambda_base;
  i.sigma_d = s.sigma_d;
  i.beta_v = s.beta_v;
  i.capacity = d.capacity;
  i.cost = robot_cost(d);
  i.power_idle_total = a.p_idle + s.p_req;
  return i;
}

/// Capability comparison. GreaterEq means `a` is at least as capable as `b`.
inline Ordering robot_dominates(const RobotInterface& a, const RobotInterface& b) {
  if (a.null || b.null) {
    if (a.null && b.null) return Ordering::Equal;
    return a.null ? Ordering::LessEq : Ordering::GreaterEq;
  }
  auto caps = [](const RobotInterface& r) {
    return Point{r.v_max,     r.a_lat_max,   r.a_lon_max, r.theta_dot_max, r.r_turn,
                 r.c_vel,     r.c_acc,       double(static_cast<int>(r.path_type)),
                 r.r_sensing, r.lambda_base, r.sigma_d,   r.beta_v,        r.capacity};
  };
  using D = Direction;
  // Preference form: smaller is better, so flip to read as capability.
  static const ProductOrder order({D::Maximize, D::Maximize, D::Maximize, D::Maximize, D::Minimize,
                                   D::Minimize, D::Minimize, D::Categorical, D::Maximize, D::Maximize,
                                   D::Maximize, D::Minimize, D::Maximize});
  return flip(order.compare(caps(a), caps(b)));
}

struct CapacityGrid {
  double max_wh = 400;
  double step_wh = 2;

  std::size_t size() const {
    if (!(step_wh > 0)) throw ConfigError("capacity step must be positive");
    const auto n = static_cast<std::size_t>(std::floor(max_wh / step_wh + 1e-9));
    if (n == 0) throw ConfigError(fmt::format("capacity grid max {} / step {} is empty", max_wh, step_wh));
    return n;
  }

  double at(std::size_t k) const { return static_cast<double>(k + 1) * step_wh; }

  std::vector<double> values() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k));
    return out;
  }
};

/// Number of designs per type before the payload filter.
inline std::size_t robot_design_count(const Catalog& c, RobotType t, const CapacityGrid& grid) {
  return c.actuation_for(t).size() * c.sensing_for(t).size() * c.batteries.size() * grid.size();
}

inline std::vector<RobotDesign> enumerate_robot_designs(const Catalog& c, RobotType t,
                                                        const CapacityGrid& grid) {
  std::vector<RobotDesign> out;
  const auto caps = grid.values();
  for (const auto& a : c.actuation_for(t))
    for (const auto& s : c.sensing_for(t))
      for (const auto& b : c.batteries)
        for (double cap : caps)
          if (mass_feasible(a, s, b, cap)) out.push_back({a, s, b, cap, false});
  return out;
}

inline nlohmann::json to_json(const RobotDesign& d) {
  if (d.null) return {{"null", true}, {"robot_type", to_string(d.type())}};
  return {{"actuation", to_json(d.actuation)},
          {"sensing", to_json(d.sensing)},
          {"battery", to_json(d.battery)},
          {"capacity", d.capacity}};
}

inline RobotDesign robot_design_from_json(const nlohmann::json& j) {
  if (j.contains("null")) return null_robot(robot_type_from_string(j.at("robot_type").get<std::string>()));
  detail::reject_unknown(j, {"actuation", "sensing", "battery", "capacity"}, "robot design");
  RobotDesign d{actuation_from_json(j.at("actuation")), sensing_from_json(j.at("sensing")),
                battery_from_json(j.at("battery")), j.at("capacity").get<double>(), false};
  return d;
}

}  // namespace codesign
