#pragma once

// Fleets: per-type robot designs with counts, the injective-matching order,
// resource totals and the capacity-vs-required-energy feedback.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include "codesign/catalog.hpp"
#include "codesign/errors.hpp"

namespace codesign {

using BigInt = boost::multiprecision::cpp_int;

struct FleetSlot {
  RobotDesign design;
  int count = 0;
  friend bool operator==(const FleetSlot&, const FleetSlot&) = default;
};

class Fleet {
public:
  Fleet() = default;

  /// Builds the canonical form. With `one_design_per_type` (the default) a
  /// type may appear in at most one slot.
  explicit Fleet(std::vector<FleetSlot> slots, int max_per_type = 3, bool one_design_per_type = true)
      : max_per_type_(max_per_type) {
    for (auto& s : slots) {
      if (s.count < 0) throw ConfigError("negative robot count");
      if (s.count == 0 || s.design.null) continue;
      if (s.count > max_per_type) throw ConfigError(fmt::format("{} robots of {} exceed the per-type maximum {}",
                                                                s.count, s.design.signature(), max_per_type));
      slots_.push_back(std::move(s));
    }
    std::sort(slots_.begin(), slots_.end(), [](const FleetSlot& a, const FleetSlot& b) {
      if (a.design.type() != b.design.type()) return a.design.type() < b.design.type();
      return a.design.signature() < b.design.signature();
    });
    // Merge identical designs so that permutations collapse.
    std::vector<FleetSlot> merged;
    for (auto& s : slots_) {
      if (!merged.empty() && merged.back().design == s.design) merged.back().count += s.count;
      else merged.push_back(std::move(s));
    }
    slots_ = std::move(merged);
    std::vector<int> per_type(all_robot_types().size(), 0);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      per_type[static_cast<std::size_t>(slots_[i].design.type())] += slots_[i].count;
      if (one_design_per_type && i > 0 && slots_[i].design.type() == slots_[i - 1].design.type())
        throw ConfigError("fleet holds two designs of type " + to_string(slots_[i].design.type()));
    }
    for (int n : per_type)
      if (n > max_per_type) throw ConfigError("per-type maximum exceeded");
  }

  const std::vector<FleetSlot>& slots() const { return slots_; }
  int max_per_type() const { return max_per_type_; }
  bool empty() const { return slots_.empty(); }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& s : slots_) n += static_cast<std::size_t>(s.count);
    return n;
  }

  /// One entry per robot, in slot order.
  std::vector<RobotDesign> expanded() const {
    std::vector<RobotDesign> out;
    for (const auto& s : slots_)
      for (int k = 0; k < s.count; ++k) out.push_back(s.design);
    return out;
  }

  std::string signature() const {
    std::string out;
    for (const auto& s : slots_) out += (out.empty() ? "" : "|") + fmt::format("{}x{}", s.design.signature(), s.count);
    return out.empty() ? "empty" : out;
  }

  /// Signature without battery technology or capacity.
  std::string motion_signature() const {
    std::string out;
    for (const auto& s : slots_)
      out += (out.empty() ? "" : "|") + fmt::format("{}x{}", s.design.motion_signature(), s.count);
    return out.empty() ? "empty" : out;
  }

  friend bool operator==(const Fleet& a, const Fleet& b) { return a.slots_ == b.slots_; }

private:
  std::vector<FleetSlot> slots_;
  int max_per_type_ = 3;
};

namespace detail {

// Kuhn's augmenting-path matching; `adj[i]` lists right vertices usable by left vertex i.
inline std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t n_right) {
  std::vector<std::size_t> match(n_right, SIZE_MAX);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match[v] == SIZE_MAX || augment(match[v])) {
        match[v] = u;
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    seen.assign(n_right, 0);
    if (augment(u)) ++size;
  }
  return size;
}

}  // namespace detail

/// True iff every robot of `a` can be matched to a distinct robot of `b` that is at least as capable.
inline bool fleet_leq(const Fleet& a, const Fleet& b) {
  const auto ra = a.expanded(), rb = b.expanded();
  if (ra.size() > rb.size()) return false;
  std::vector<RobotInterface> ib;
  for (const auto& r : rb) ib.push_back(robot_interface(r));
  std::vector<std::vector<std::size_t>> adj(ra.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const auto ia = robot_interface(ra[i]);
    for (std::size_t j = 0; j < rb.size(); ++j)
      if (is_geq(robot_dominates(ib[j], ia))) adj[i].push_back(j);
  }
  return detail::max_bipartite_matching(adj, rb.size()) == ra.size();
}

struct FleetResources {
  double total_cost = 0;    // USD
  double total_energy = 0;  // Wh
};

inline FleetResources fleet_totals(const Fleet& f, const std::vector<double>& energy_per_robot) {
  if (energy_per_robot.size() != f.size())
    throw ShapeError(fmt::format("fleet has {} robots but {} energies were given", f.size(), energy_per_robot.size()));
  FleetResources r;
  for (const auto& s : f.slots()) r.total_cost += s.count * robot_cost(s.design);
  for (double e : energy_per_robot) r.total_energy += e;
  return r;
}

// ---------------------------------------------------------------------------
// Capacity feedback

struct CapacitySizing {
  CapacityGrid grid{};
  bool continuous = false;  // use the required energy itself instead of the grid ceiling
};

/// Smallest admissible capacity covering `required_wh`, or nullopt when the
/// payload budget or the grid ceiling rules every capacity out.
inline std::optional<double> minimal_capacity(const ActuationModule& a, const SensingModule& s,
                                              const BatteryTechnology& b, double required_wh,
                                              const CapacitySizing& sizing) {
  if (required_wh < 0) throw ConfigError("required energy must be non-negative");
  const double mass_cap = max_feasible_capacity(a, s, b);
  double cap = 0;
  if (sizing.continuous) {
    cap = required_wh;
    if (cap > sizing.grid.max_wh) return std::nullopt;
  } else {
    const double step = sizing.grid.step_wh;
    const auto k = std::max<long long>(1, static_cast<long long>(std::ceil(required_wh / step - 1e-9)));
    if (static_cast<std::size_t>(k) > sizing.grid.size()) return std::nullopt;
    cap = static_cast<double>(k) * step;
  }
  if (cap > mass_cap || !mass_feasible(a, s, b, cap)) return std::nullopt;
  return cap;
}

struct CapacityAssignment {
  bool feasible = true;
  std::vector<double> capacity;  // per expanded robot, 0 where infeasible
  std::vector<std::string> diagnostics;
};

/// Per-robot minimal capacities for the fleet's modules and battery technologies.
inline CapacityAssignment capacity_feedback(const Fleet& f, const std::vector<double>& required_wh,
                                            const CapacitySizing& sizing = {}) {
  const auto robots = f.expanded();
  if (required_wh.size() != robots.size()) throw ShapeError("one required energy per robot expected");
  CapacityAssignment out;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const auto& r = robots[i];
    const auto cap = minimal_capacity(r.actuation, r.sensing, r.battery, required_wh[i], sizing);
    if (cap) {
      out.capacity.push_back(*cap);
    } else {
      out.feasible = false;
      out.capacity.push_back(0);
      out.diagnostics.push_back(fmt::format(
          "robot {} ({}): needs {:.2f} Wh but at most {:.2f} Wh fits the payload and grid", i,
          r.motion_signature() + "." + r.battery.name, required_wh[i],
          std::min(sizing.grid.max_wh, max_feasible_capacity(r.actuation, r.sensing, r.battery))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration and counting

/// Number of fleets, including the empty one: prod over types of (1 + n_max * C_t).
inline BigInt fleet_count(const std::vector<std::size_t>& designs_per_type, int max_per_type) {
  BigInt n = 1;
  for (auto c : designs_per_type) n *= BigInt(1) + BigInt(max_per_type) * BigInt(c);
  return n;
}

/// Total candidate systems: planners * executors * fleets.
inline BigInt design_space_count(std::size_t types, int max_per_type, const std::vector<std::size_t>& designs_per_type,
                                 std::size_t planners, std::size_t executors) {
  if (designs_per_type.size() != types)
    throw ConfigError(fmt::format("{} design counts given for {} types", designs_per_type.size(), types));
  return BigInt(planners) * BigInt(executors) * fleet_count(designs_per_type, max_per_type);
}

/// Short scientific rendering, e.g. "2.66×10^12".
inline std::string approx_scientific(const BigInt& n) {
  const std::string digits = n.str();
  if (digits.size() <= 3) return digits;
  const double mantissa = std::stod(digits.substr(0, 1) + "." + digits.substr(1, 6));
  return fmt::format("{:.2f}×10^{}", mantissa, digits.size() - 1);
}

/// Calls `visit` for every nonempty canonical fleet whose type `t` slot uses
/// one design from `designs[t]` (or is absent).
template <class Visit>
void for_each_fleet(const std::vector<std::vector<RobotDesign>>& designs, int max_per_type, Visit&& visit) {
  std::vector<FleetSlot> current;
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == designs.size()) {
      if (!current.empty()) visit(Fleet(current, max_per_type));
      return;
    }
    rec(t + 1);
    for (const auto& d : designs[t])
      for (int k = 1; k <= max_per_type; ++k) {
        current.push_back({d, k});
        rec(t + 1);
        current.pop_back();
      }
  };
  rec(0);
}

inline std::vector<Fleet> enumerate_fleets(const std::vector<std::vector<RobotDesign>>& designs, int max_per_type) {
  if (max_per_type < 1) throw ConfigError("max_per_type must be at least 1");
  std::vector<Fleet> out;
  for_each_fleet(designs, max_per_type, [&](Fleet f) { out.push_back(std::move(f)); });
  return out;
}

inline nlohmann::json to_json(const Fleet& f) {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& s : f.slots()) slots.push_back({{"design", to_json(s.design)}, {"count", s.count}});
  return {{"max_per_type", f.max_per_type()}, {"slots", slots}};
}

inline Fleet fleet_from_json(const nlohmann::json& j) {
  std::vector<FleetSlot> slots;
  for (const auto& s : j.at("slots")) slots.push_back({robot_design_from_json(s.at("design")), s.at("count").get<int>()});
  return Fleet(slots, j.at("max_per_type").get<int>());
}

}  // namespace codesign
