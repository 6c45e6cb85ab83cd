#pragma once

// Plan -> execute -> evaluate over every candidate system of a scenario, and
// Pareto queries over (cost, energy, makespan) for one or several tasks.
//
// Simulation outcomes depend only on the motion-relevant part of a fleet
// (actuation and sensing modules, counts), the planner and the map, so they
// are stored once per such key and shared by every battery choice. Battery
// sizing, cost and task checks are cheap and redone per query.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/evaluator.hpp"
#include "codesign/executor.hpp"
#include "codesign/fleet.hpp"
#include "codesign/mdpi.hpp"
#include "codesign/planners.hpp"
#include "codesign/scenario.hpp"

namespace codesign {

// ---------------------------------------------------------------------------
// Simulation

/// Outcome of one fleet executing one planner's plan on one map.
struct SimResult {
  std::vector<double> energy_wh;   // per robot, expanded order
  std::vector<double> duration_s;  // per robot
  double coverage = 0;
  std::vector<double> p_hit;  // per target of the map
  bool fallback = false;
  std::size_t waypoints = 0;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

inline nlohmann::json to_json(const SimResult& r) {
  return {{"energy_wh", r.energy_wh}, {"duration_s", r.duration_s}, {"coverage", r.coverage},
          {"p_hit", r.p_hit},         {"fallback", r.fallback},     {"waypoints", r.waypoints}};
}

inline SimResult sim_from_json(const nlohmann::json& j) {
  SimResult r;
  r.energy_wh = j.at("energy_wh").get<std::vector<double>>();
  r.duration_s = j.at("duration_s").get<std::vector<double>>();
  r.coverage = j.at("coverage").get<double>();
  r.p_hit = j.at("p_hit").get<std::vector<double>>();
  r.fallback = j.at("fallback").get<bool>();
  r.waypoints = j.at("waypoints").get<std::size_t>();
  return r;
}

inline SimResult simulate(const Fleet& fleet, PlannerKind planner, const MapSpec& m, double dt, double grid_res) {
  if (fleet.empty()) throw ConfigError("cannot evaluate an empty fleet");
  const auto wc = plan(planner, fleet, m.map);
  const auto runs = execute(fleet, wc, dt);
  const auto robots = fleet.expanded();
  SimResult out;
  out.fallback = wc.fallback;
  out.waypoints = wc.total_waypoints();
  std::vector<Trajectory> trajs;
  std::vector<double> radii;
  std::vector<SensingTuple> sensing;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.energy_wh.push_back(runs[i].energy.energy_wh);
    out.duration_s.push_back(runs[i].energy.duration);
    trajs.push_back(runs[i].trajectory);
    radii.push_back(robots[i].sensing.r_sensing);
    sensing.push_back(sensing_tuple(robots[i].sensing));
  }
  out.coverage = coverage_fraction(trajs, radii, m.map, grid_res);
  out.p_hit = hit_probabilities(m.targets, trajs, sensing);
  return out;
}

/// Directory for persisted simulation records: CODESIGN_CACHE_DIR if set, else `fallback`.
inline std::filesystem::path record_store_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("CODESIGN_CACHE_DIR"); env && *env) return env;
  return fallback;
}

/// Memo of simulation outcomes, optionally backed by a directory of JSON files.
class SimCache {
public:
  SimCache() = default;
  explicit SimCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  /// With `enabled == false` every lookup recomputes and nothing is stored.
  bool enabled = true;

  template <class Compute>
  SimResult get(const std::string& key, Compute&& compute) {
    if (!enabled) {
      ++misses_;
      return compute();
    }
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    if (!dir_.empty()) {
      if (auto stored = load(key)) {
        ++disk_hits_;
        return memo_.emplace(key, std::move(*stored)).first->second;
      }
    }
    ++misses_;
    SimResult r = compute();
    if (!dir_.empty()) save(key, r);
    return memo_.emplace(key, std::move(r)).first->second;
  }

  std::size_t hits() const { return hits_; }
  std::size_t disk_hits() const { return disk_hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t size() const { return memo_.size(); }
  const std::filesystem::path& dir() const { return dir_; }

private:
  std::filesystem::path file_for(const std::string& key) const { return dir_ / (hex64(fnv1a(key)) + ".json"); }

  std::optional<SimResult> load(const std::string& key) const {
    std::ifstream in(file_for(key));
    if (!in) return std::nullopt;
    try {
      nlohmann::json j;
      in >> j;
      if (j.at("key").get<std::string>() != key) return std::nullopt;
      return sim_from_json(j.at("result"));
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are recomputed and overwritten
    }
  }

  void save(const std::string& key, const SimResult& r) const {
    // write then rename, so a reader never sees half a record
    const auto path = file_for(key);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw ConfigError("cannot write record store entry '" + tmp + "'");
      out << nlohmann::json{{"key", key}, {"result", to_json(r)}}.dump();
    }
    std::filesystem::rename(tmp, path);
  }

  std::filesystem::path dir_;
  std::map<std::string, SimResult> memo_;
  std::size_t hits_ = 0, disk_hits_ = 0, misses_ = 0;
};

inline std::string simulation_key(const Fleet& fleet, PlannerKind planner, const Scenario& s, const MapSpec& m) {
  return fmt::format("{}|{}|{}|{}", to_string(planner), fleet.motion_signature(), m.map.id,
                     simulation_context_hash(s, m));
}

// ---------------------------------------------------------------------------
// Candidates

struct CandidateSystem {
  Fleet fleet;  // battery technology chosen, capacity left at 0 until sizing
  PlannerKind planner = PlannerKind::AGD;

  std::string signature() const { return to_string(planner) + ":" + fleet.signature(); }
};

struct QueryConstraints {
  std::vector<PlannerKind> planners;  // empty: scenario's planners
  std::vector<RobotType> types;       // empty: scenario's types
  int max_per_type = 0;               // 0: scenario's value
  /// Per type, the allowed (actuation variant, sensing variant) pairs; absent types are unrestricted.
  std::map<RobotType, std::vector<std::pair<std::string, std::string>>> modules;
  /// Drop battery technologies beaten in both energy density and cost per Wh.
  bool prune_batteries = true;
};

/// Technologies not dominated in (rho, alpha); of two identical ones the first is kept.
inline std::vector<BatteryTechnology> nondominated_batteries(const std::vector<BatteryTechnology>& all) {
  std::vector<BatteryTechnology> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto &b = all[i], &c = all[j];
      const bool geq = c.rho >= b.rho && c.alpha >= b.alpha;
      const bool strict = c.rho > b.rho || c.alpha > b.alpha;
      dominated = geq && (strict || j < i);
    }
    if (!dominated) out.push_back(all[i]);
  }
  return out;
}

/// Unsized designs (capacity 0) of one type allowed by the scenario and constraints.
inline std::vector<RobotDesign> design_options(const Scenario& s, RobotType t, const QueryConstraints& q) {
  auto batteries = s.battery_set();
  if (q.prune_batteries) batteries = nondominated_batteries(batteries);
  const auto pinned = q.modules.find(t);
  std::vector<RobotDesign> out;
  for (const auto& a : s.catalog.actuation_for(t))
    for (const auto& m : s.catalog.sensing_for(t)) {
      if (pinned != q.modules.end()) {
        const auto& ok = pinned->second;
        if (std::find(ok.begin(), ok.end(), std::make_pair(a.variant, m.variant)) == ok.end()) continue;
      }
      for (const auto& b : batteries) out.push_back({a, m, b, 0, false});
    }
  return out;
}

/// Every candidate, planner-major, then by fleet signature.
inline std::vector<CandidateSystem> enumerate_candidates(const Scenario& s, const QueryConstraints& q = {}) {
  const auto planners = q.planners.empty() ? s.planners : q.planners;
  const auto types = q.types.empty() ? s.types : q.types;
  const int n_max = q.max_per_type > 0 ? q.max_per_type : s.max_per_type;
  for (auto p : planners)
    if (std::find(s.planners.begin(), s.planners.end(), p) == s.planners.end())
      throw ConfigError("planner " + to_string(p) + " is not enabled in scenario '" + s.name + "'");
  std::vector<std::vector<RobotDesign>> designs;
  for (auto t : types) designs.push_back(design_options(s, t, q));
  const auto fleets = enumerate_fleets(designs, n_max);
  std::vector<std::pair<std::string, const Fleet*>> order;
  for (const auto& f : fleets) order.emplace_back(f.signature(), &f);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CandidateSystem> out;
  for (auto p : planners)
    for (const auto& [sig, f] : order) out.push_back({*f, p});
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation records

struct TaskOutcome {
  std::string task;
  std::vector<double> values;  // ordered like the task's requirements
  bool satisfied = false;
  double energy_wh = 0;
  double makespan_s = 0;
};

struct EvaluationRecord {
  CandidateSystem candidate;
  Fleet sized;            // candidate fleet with battery capacities filled in
  bool feasible = false;  // batteries fit the payload and the capacity grid
  std::string reason;
  double cost_usd = 0;
  double energy_wh = 0;
  double makespan_s = 0;
  std::vector<TaskOutcome> tasks;
  bool fallback = false;

  bool satisfies_tasks() const {
    for (const auto& t : tasks)
      if (!t.satisfied) return false;
    return true;
  }
  bool admissible() const { return feasible && satisfies_tasks(); }
};

namespace detail {

inline std::vector<std::string> query_maps(const std::vector<const TaskProfile*>& tasks) {
  std::vector<std::string> ids;
  for (const auto* t : tasks)
    for (const auto& id : t->map_ids())
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  return ids;
}

inline std::vector<const TaskProfile*> resolve_tasks(const Scenario& s, const std::vector<std::size_t>& ids) {
  if (ids.empty()) throw ConfigError("a query needs at least one task");
  std::vector<const TaskProfile*> out;
  for (auto i : ids) {
    if (i >= s.tasks.size()) throw ConfigError(fmt::format("task index {} out of range", i));
    out.push_back(&s.tasks[i]);
  }
  return out;
}

}  // namespace detail

/// Sizes batteries for the maps of `task_ids` and checks every task.
inline EvaluationRecord evaluate_candidate(const Scenario& s, const CandidateSystem& c,
                                           const std::vector<std::size_t>& task_ids, SimCache& cache) {
  if (c.fleet.empty()) throw ConfigError("cannot evaluate an empty fleet");
  const auto tasks = detail::resolve_tasks(s, task_ids);
  const auto map_ids = detail::query_maps(tasks);
  std::map<std::string, SimResult> sims;
  for (const auto& id : map_ids) {
    const auto& m = s.map(id);
    sims[id] = cache.get(simulation_key(c.fleet, c.planner, s, m),
                         [&] { return simulate(c.fleet, c.planner, m, s.dt, s.grid_res); });
  }
  const std::size_t n = c.fleet.size();

  EvaluationRecord r;
  r.candidate = c;
  for (const auto& [id, sim] : sims) r.fallback = r.fallback || sim.fallback;

  // required energy per robot: its most demanding map across the query
  std::vector<double> required(n, 0);
  for (const auto& id : map_ids)
    for (std::size_t i = 0; i < n; ++i) required[i] = std::max(required[i], sims[id].energy_wh[i]);

  // one capacity per slot, covering its hungriest robot
  const CapacitySizing sizing{s.capacity, false};
  std::vector<FleetSlot> slots;
  std::size_t offset = 0;
  r.feasible = true;
  for (const auto& slot : c.fleet.slots()) {
    double need = 0;
    for (int k = 0; k < slot.count; ++k) need = std::max(need, required[offset + static_cast<std::size_t>(k)]);
    offset += static_cast<std::size_t>(slot.count);
    auto d = slot.design;
    const auto cap = minimal_capacity(d.actuation, d.sensing, d.battery, need, sizing);
    if (!cap) {
      r.feasible = false;
      r.reason += fmt::format("{}{} needs {:.2f} Wh, at most {:.2f} Wh fits payload and grid",
                              r.reason.empty() ? "" : "; ", d.motion_signature() + "." + d.battery.name, need,
                              std::min(s.capacity.max_wh, max_feasible_capacity(d.actuation, d.sensing, d.battery)));
      d.capacity = 0;
    } else {
      d.capacity = *cap;
    }
    slots.push_back({d, slot.count});
  }
  r.sized = Fleet(slots, c.fleet.max_per_type());
  if (r.feasible)
    for (const auto& slot : r.sized.slots()) r.cost_usd += slot.count * robot_cost(slot.design);

  for (const auto* t : tasks) {
    TaskOutcome o;
    o.task = t->name;
    for (const auto& req : t->requirements) {
      const auto& sim = sims[req.map_id];
      o.values.push_back(req.metric == MetricKind::Coverage ? sim.coverage : count_detected(sim.p_hit, t->delta));
    }
    o.satisfied = task_satisfied(o.values, *t);
    const auto ids = t->map_ids();
    for (std::size_t i = 0; i < n; ++i) {
      double e = 0;
      for (const auto& id : ids) {
        e = std::max(e, sims[id].energy_wh[i]);
        o.makespan_s = std::max(o.makespan_s, sims[id].duration_s[i]);
      }
      o.energy_wh += e;
    }
    r.energy_wh = std::max(r.energy_wh, o.energy_wh);
    r.makespan_s = std::max(r.makespan_s, o.makespan_s);
    r.tasks.push_back(std::move(o));
  }
  return r;
}

/// Simulates every (motion fleet, planner, map) the candidates need; returns the number of candidates.
inline std::size_t populate(const Scenario& s, const QueryConstraints& q, SimCache& cache) {
  const auto cands = enumerate_candidates(s, q);
  for (const auto& c : cands)
    for (const auto& m : s.maps)
      (void)cache.get(simulation_key(c.fleet, c.planner, s, m),
                      [&] { return simulate(c.fleet, c.planner, m, s.dt, s.grid_res); });
  return cands.size();
}

// ---------------------------------------------------------------------------
// Pareto queries

struct FrontPoint {
  double cost_usd = 0, energy_wh = 0, makespan_s = 0;
  EvaluationRecord witness;
};

struct ParetoFront {
  std::vector<std::string> tasks;
  std::vector<FrontPoint> points;  // sorted by (cost, energy, makespan)
  std::size_t candidates = 0;
  std::size_t payload_infeasible = 0;
  std::size_t below_threshold = 0;
  std::string report;  // why the front is empty, if it is

  bool empty() const { return points.empty(); }
};

/// Minimal (cost, energy, makespan) among admissible records; ties go to the earliest record.
inline ParetoFront pareto_front(const std::vector<EvaluationRecord>& records, const std::vector<TaskProfile>& tasks) {
  std::size_t arity = 0;
  Point demand;
  for (const auto& t : tasks)
    for (const auto& r : t.requirements) {
      ++arity;
      demand.push_back(r.threshold);
    }
  DesignProblem system("system", ProductOrder::all(arity, Direction::Maximize),
                       ProductOrder::all(3, Direction::Minimize));
  std::vector<std::size_t> index;  // implementation -> record
  ParetoFront out;
  for (const auto& t : tasks) out.tasks.push_back(t.name);
  out.candidates = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.tasks.size() != tasks.size()) throw ShapeError("record and query disagree on the task list");
    if (!r.feasible) {
      ++out.payload_infeasible;
      continue;
    }
    if (!r.satisfies_tasks()) ++out.below_threshold;
    Point provides;
    for (const auto& o : r.tasks) provides.insert(provides.end(), o.values.begin(), o.values.end());
    system.add({r.candidate.signature(), provides, {r.cost_usd, r.energy_wh, r.makespan_s}});
    index.push_back(i);
  }
  const auto q = fix_fun_min_res(system, demand);
  for (const auto& p : q.frontier)
    out.points.push_back({p.value[0], p.value[1], p.value[2], records[index[p.choice[0]]]});
  std::sort(out.points.begin(), out.points.end(), [](const FrontPoint& a, const FrontPoint& b) {
    return std::tie(a.cost_usd, a.energy_wh, a.makespan_s) < std::tie(b.cost_usd, b.energy_wh, b.makespan_s);
  });
  if (out.points.empty()) {
    out.report = fmt::format("no feasible candidate: {} candidates, {} exceed payload or capacity grid, {} miss a "
                             "task threshold",
                             out.candidates, out.payload_infeasible, out.below_threshold);
    // best value reached per requirement, to show how far off the thresholds are
    for (std::size_t ti = 0; ti < tasks.size(); ++ti)
      for (std::size_t j = 0; j < tasks[ti].requirements.size(); ++j) {
        const auto& req = tasks[ti].requirements[j];
        double best = -1;
        for (const auto& r : records) best = std::max(best, r.tasks[ti].values[j]);
        out.report += fmt::format("; {} {} on {}: best {:.4g}, needed {:.4g}", tasks[ti].name, to_string(req.metric),
                                  req.map_id, best, req.threshold);
      }
  }
  return out;
}

inline std::vector<EvaluationRecord> evaluate_all(const Scenario& s, const std::vector<std::size_t>& task_ids,
                                                  const QueryConstraints& q, SimCache& cache) {
  std::vector<EvaluationRecord> out;
  for (const auto& c : enumerate_candidates(s, q)) out.push_back(evaluate_candidate(s, c, task_ids, cache));
  return out;
}

/// Pareto front of candidates that satisfy every task in `task_ids`.
inline ParetoFront solve_query(const Scenario& s, const std::vector<std::size_t>& task_ids,
                               const QueryConstraints& q, SimCache& cache) {
  const auto records = evaluate_all(s, task_ids, q, cache);
  std::vector<TaskProfile> tasks;
  for (auto i : task_ids) tasks.push_back(s.tasks.at(i));
  return pareto_front(records, tasks);
}

inline ParetoFront multi_task_solve(const Scenario& s, const std::vector<std::size_t>& task_ids,
                                    const QueryConstraints& q, SimCache& cache) {
  if (task_ids.size() < 2) throw ConfigError("a multi-task query needs at least two tasks");
  return solve_query(s, task_ids, q, cache);
}

struct BaselineFronts {
  ParetoFront codesign;
  ParetoFront fixed_planner;  // AGD only
  ParetoFront fixed_robots;   // modules pinned per type, planner free
};

/// Modules of the fixed-robots baseline: large aerial V1, medium aerial and ground V2, first sensing variant.
inline std::map<RobotType, std::vector<std::pair<std::string, std::string>>> pinned_baseline_modules(
    const Scenario& s) {
  const std::map<RobotType, std::string> actuation{
      {RobotType::AerialL, "V1"}, {RobotType::AerialM, "V2"}, {RobotType::Ground, "V2"}};
  std::map<RobotType, std::vector<std::pair<std::string, std::string>>> out;
  for (const auto& [t, v] : actuation) {
    const auto sensing = s.catalog.sensing_for(t);
    if (sensing.empty()) continue;
    (void)s.catalog.actuation_module(t, v);  // throws when the catalog lacks it
    out[t] = {{v, sensing.front().variant}};
  }
  return out;
}

inline BaselineFronts sequential_baselines(const Scenario& s, const std::vector<std::size_t>& task_ids,
                                           const QueryConstraints& q, SimCache& cache) {
  BaselineFronts out;
  out.codesign = solve_query(s, task_ids, q, cache);
  auto fp = q;
  fp.planners = {PlannerKind::AGD};
  out.fixed_planner = solve_query(s, task_ids, fp, cache);
  auto fr = q;
  for (auto& [t, m] : pinned_baseline_modules(s)) fr.modules[t] = m;
  out.fixed_robots = solve_query(s, task_ids, fr, cache);
  return out;
}

// ---------------------------------------------------------------------------
// Export

inline nlohmann::json to_json(const TaskOutcome& o) {
  return {{"task", o.task}, {"values", o.values}, {"satisfied", o.satisfied}, {"energy_wh", o.energy_wh},
          {"makespan_s", o.makespan_s}};
}

inline nlohmann::json to_json(const EvaluationRecord& r) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : r.tasks) tasks.push_back(to_json(t));
  return {{"signature", r.candidate.signature()},
          {"planner", to_string(r.candidate.planner)},
          {"fleet_signature", r.sized.signature()},
          {"fleet", to_json(r.sized)},
          {"feasible", r.feasible},
          {"reason", r.reason},
          {"cost_usd", r.cost_usd},
          {"energy_wh", r.energy_wh},
          {"makespan_s", r.makespan_s},
          {"tasks", tasks},
          {"fallback", r.fallback}};
}

inline nlohmann::json to_json(const ParetoFront& f) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : f.points)
    pts.push_back({{"cost_usd", p.cost_usd},
                   {"energy_wh", p.energy_wh},
                   {"makespan_s", p.makespan_s},
                   {"witness", to_json(p.witness)}});
  return {{"tasks", f.tasks},
          {"candidates", f.candidates},
          {"payload_infeasible", f.payload_infeasible},
          {"below_threshold", f.below_threshold},
          {"report", f.report},
          {"points", pts}};
}

/// Objective vectors of a front file, in file order.
inline std::vector<Point> front_points_from_json(const nlohmann::json& j) {
  std::vector<Point> out;
  for (const auto& p : j.at("points"))
    out.push_back({p.at("cost_usd").get<double>(), p.at("energy_wh").get<double>(), p.at("makespan_s").get<double>()});
  return out;
}

inline std::vector<Point> front_points(const ParetoFront& f) {
  std::vector<Point> out;
  for (const auto& p : f.points) out.push_back({p.cost_usd, p.energy_wh, p.makespan_s});
  return out;
}

inline void write_front_csv(std::ostream& os, const ParetoFront& f) {
  os << "cost_usd,energy_wh,makespan_s,planner,fleet_signature\n";
  for (const auto& p : f.points)
    fmt::print(os, "{},{},{},{},{}\n", p.cost_usd, p.energy_wh, p.makespan_s, to_string(p.witness.candidate.planner),
               p.witness.sized.signature());
}

}  // namespace codesign
