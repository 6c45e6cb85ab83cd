#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "codesign/codesign.hpp"

namespace fs = std::filesystem;
using namespace codesign;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 2;
constexpr int kConfig = 3;
constexpr int kGuard = 4;

struct QueryArgs {
  std::string scenario;
  std::vector<std::string> tasks;
  std::vector<std::string> planners;
  std::vector<std::string> types;
  int max_per_type = 0;
  bool no_prune = false;
  std::string out = "out";
};

void add_query_flags(CLI::App* cmd, QueryArgs& a) {
  cmd->add_option("--scenario", a.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--task", a.tasks, "task name (repeatable; default: every task)");
  cmd->add_option("--planner", a.planners, "restrict to planner (AGD, DARP, MRTA_LITE)");
  cmd->add_option("--type", a.types, "restrict to robot type");
  cmd->add_option("--max-per-type", a.max_per_type, "override the fleet size bound");
  cmd->add_flag("--no-prune", a.no_prune, "keep battery technologies dominated in density and price");
  cmd->add_option("--out", a.out, "output directory");
}

QueryConstraints constraints(const QueryArgs& a) {
  QueryConstraints q;
  for (const auto& p : a.planners) q.planners.push_back(planner_from_string(p));
  for (const auto& t : a.types) q.types.push_back(robot_type_from_string(t));
  q.max_per_type = a.max_per_type;
  q.prune_batteries = !a.no_prune;
  return q;
}

std::vector<std::size_t> task_ids(const Scenario& s, const std::vector<std::string>& names) {
  std::vector<std::size_t> ids;
  if (names.empty())
    for (std::size_t i = 0; i < s.tasks.size(); ++i) ids.push_back(i);
  for (const auto& n : names) ids.push_back(s.task_index(n));
  if (ids.empty()) throw ConfigError("scenario '" + s.name + "' defines no tasks");
  return ids;
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write '" + p.string() + "'");
  out << text;
}

void write_json(const fs::path& p, const nlohmann::json& j) { write_file(p, j.dump(2) + "\n"); }

void write_front(const fs::path& dir, const std::string& stem, const ParetoFront& f) {
  write_json(dir / (stem + ".json"), to_json(f));
  std::ostringstream csv;
  write_front_csv(csv, f);
  write_file(dir / (stem + ".csv"), csv.str());
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

// TYPE:ACTUATION:SENSING:BATTERY:COUNT[:CAPACITY_WH]
FleetSlot parse_robot(const Catalog& c, const std::string& spec) {
  std::vector<std::string> f;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) f.push_back(part);
  if (f.size() != 5 && f.size() != 6)
    throw ConfigError("robot '" + spec + "' should read TYPE:ACTUATION:SENSING:BATTERY:COUNT[:CAPACITY_WH]");
  const auto t = robot_type_from_string(f[0]);
  RobotDesign d{c.actuation_module(t, f[1]), c.sensing_module(t, f[2]), c.battery(f[3]), 0, false};
  try {
    if (f.size() == 6) d.capacity = std::stod(f[5]);
    return {d, std::stoi(f[4])};
  } catch (const std::logic_error&) {
    throw ConfigError("robot '" + spec + "' has a malformed number");
  }
}

struct SingleArgs {
  std::string scenario;
  std::string map;
  std::string planner = "AGD";
  std::vector<std::string> robots;
  std::string out = "out";
};

void add_single_flags(CLI::App* cmd, SingleArgs& a) {
  cmd->add_option("--scenario", a.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--map", a.map, "map id (default: first map)");
  cmd->add_option("--planner", a.planner, "AGD, DARP or MRTA_LITE");
  cmd->add_option("--robot", a.robots, "TYPE:ACTUATION:SENSING:BATTERY:COUNT[:CAPACITY_WH], repeatable")->required();
  cmd->add_option("--out", a.out, "output directory");
}

struct Single {
  Scenario scenario;
  const MapSpec* map;
  Fleet fleet;
  PlannerKind planner;
};

Single load_single(const SingleArgs& a) {
  Single s{load_scenario(a.scenario), nullptr, {}, planner_from_string(a.planner)};
  s.map = a.map.empty() ? &s.scenario.maps.front() : &s.scenario.map(a.map);
  std::vector<FleetSlot> slots;
  int most = 1;
  for (const auto& r : a.robots) {
    slots.push_back(parse_robot(s.scenario.catalog, r));
    most = std::max(most, slots.back().count);
  }
  s.fleet = Fleet(slots, most);
  if (s.fleet.empty()) throw ConfigError("the fleet has no robots");
  return s;
}

void print_front(const ParetoFront& f) {
  fmt::print("{} candidates, {} payload-infeasible, {} below threshold, {} front points\n", f.candidates,
             f.payload_infeasible, f.below_threshold, f.points.size());
  for (const auto& p : f.points)
    fmt::print("  {:10.2f} USD {:9.3f} Wh {:9.1f} s  {} {}\n", p.cost_usd, p.energy_wh, p.makespan_s,
               to_string(p.witness.candidate.planner), p.witness.sized.signature());
}

void print_indicators(const IndicatorComparison& c) {
  fmt::print("{:<16} {:>10} {:>10} {:>10}\n", "front", "HV", "GD+", "IGD+");
  for (const auto& r : c.reports) fmt::print("{:<16} {:10.6f} {:10.6f} {:10.6f}\n", r.front, r.hv, r.gd_plus, r.igd_plus);
}

Aggregate aggregate_from_string(const std::string& s) {
  if (s == "max") return Aggregate::Max;
  if (s == "mean") return Aggregate::Mean;
  throw ConfigError("unknown aggregate '" + s + "' (max or mean)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-driven robot fleet co-design"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "size of the design space");
  std::size_t n_types = 3, n_planners = 3, n_executors = 1;
  int count_max = 3;
  std::vector<std::size_t> designs;
  std::string count_scenario;
  count->add_option("--types", n_types, "number of robot types");
  count->add_option("--max-per-type", count_max, "robots per type");
  count->add_option("--designs", designs, "robot designs per type")->delimiter(',');
  count->add_option("--planners", n_planners, "number of planners");
  count->add_option("--executors", n_executors, "number of executors");
  count->add_option("--scenario", count_scenario, "derive design counts from a scenario's catalog and grid")
      ->check(CLI::ExistingFile);

  auto* populate_cmd = app.add_subcommand("populate", "simulate every candidate into the record store");
  QueryArgs pop;
  add_query_flags(populate_cmd, pop);

  auto* solve = app.add_subcommand("solve", "Pareto front of one query");
  QueryArgs sol;
  add_query_flags(solve, sol);

  auto* baselines = app.add_subcommand("baselines", "co-design against fixed-planner and fixed-robot searches");
  QueryArgs base;
  std::string base_aggregate = "max";
  add_query_flags(baselines, base);
  baselines->add_option("--aggregate", base_aggregate, "GD+/IGD+ aggregation: max or mean");

  auto* indicators = app.add_subcommand("indicators", "compare stored fronts");
  std::vector<std::string> fronts;
  std::string reference, ind_aggregate = "max", ind_out;
  indicators->add_option("--front", fronts, "front JSON file, repeatable")->required()->check(CLI::ExistingFile);
  indicators->add_option("--reference", reference, "reference front JSON file (default: first front)")
      ->check(CLI::ExistingFile);
  indicators->add_option("--aggregate", ind_aggregate, "max or mean");
  indicators->add_option("--out", ind_out, "write indicators.json into this directory");

  auto* plan_cmd = app.add_subcommand("plan", "waypoints of one fleet on one map");
  SingleArgs pl;
  add_single_flags(plan_cmd, pl);

  auto* simulate_cmd = app.add_subcommand("simulate", "execute one fleet on one map and write trajectories");
  SingleArgs sim;
  add_single_flags(simulate_cmd, sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*count) {
      if (!count_scenario.empty()) {
        const auto s = load_scenario(count_scenario);
        designs.clear();
        for (auto t : s.types) designs.push_back(robot_design_count(s.catalog, t, s.capacity));
        n_types = s.types.size();
        count_max = s.max_per_type;
        n_planners = s.planners.size();
      }
      if (designs.empty()) throw ConfigError("count needs --designs or --scenario");
      const auto n = design_space_count(n_types, count_max, designs, n_planners, n_executors);
      fmt::print("{}\n≈ {}\n", n.str(), approx_scientific(n));
      return kOk;
    }

    if (*populate_cmd) {
      const auto s = load_scenario(pop.scenario);
      auto q = constraints(pop);
      SimCache cache(record_store_dir(fs::path(pop.out) / "records"));
      const auto n = populate(s, q, cache);
      fmt::print("{} candidates, {} simulations run, {} loaded from {}\n", n, cache.misses(), cache.disk_hits(),
                 cache.dir().string());
      return kOk;
    }

    if (*solve) {
      const auto s = load_scenario(sol.scenario);
      SimCache cache(record_store_dir(fs::path(sol.out) / "records"));
      const auto f = solve_query(s, task_ids(s, sol.tasks), constraints(sol), cache);
      write_front(sol.out, "front", f);
      print_front(f);
      if (f.empty()) {
        fmt::print(stderr, "{}\n", f.report);
        return kInfeasible;
      }
      return kOk;
    }

    if (*baselines) {
      const auto s = load_scenario(base.scenario);
      SimCache cache(record_store_dir(fs::path(base.out) / "records"));
      const auto b = sequential_baselines(s, task_ids(s, base.tasks), constraints(base), cache);
      const std::vector<std::pair<std::string, const ParetoFront*>> all{
          {"codesign", &b.codesign}, {"fixed_planner", &b.fixed_planner}, {"fixed_robots", &b.fixed_robots}};
      std::vector<std::string> names;
      std::vector<std::vector<Point>> pts;
      for (const auto& [name, f] : all) {
        write_front(base.out, name, *f);
        if (f->empty()) {
          fmt::print(stderr, "{}: {}\n", name, f->report);
          continue;
        }
        names.push_back(name);
        pts.push_back(front_points(*f));
      }
      if (b.codesign.empty()) return kInfeasible;
      const auto c = compare_fronts(names, pts, 0, aggregate_from_string(base_aggregate));
      write_json(fs::path(base.out) / "indicators.json", to_json(c));
      print_indicators(c);
      return kOk;
    }

    if (*indicators) {
      if (reference.empty()) reference = fronts.front();
      std::vector<std::string> names;
      std::vector<std::vector<Point>> pts;
      std::size_t ref = fronts.size();
      for (std::size_t i = 0; i < fronts.size(); ++i) {
        names.push_back(fs::path(fronts[i]).stem().string());
        pts.push_back(front_points_from_json(read_json(fronts[i])));
        if (ref == fronts.size() && fs::equivalent(fronts[i], reference)) ref = i;
      }
      if (ref == fronts.size()) {
        names.push_back(fs::path(reference).stem().string());
        pts.push_back(front_points_from_json(read_json(reference)));
      }
      const auto c = compare_fronts(names, pts, ref, aggregate_from_string(ind_aggregate));
      if (!ind_out.empty()) write_json(fs::path(ind_out) / "indicators.json", to_json(c));
      print_indicators(c);
      return kOk;
    }

    if (*plan_cmd) {
      const auto s = load_single(pl);
      const auto wc = plan(s.planner, s.fleet, s.map->map);
      write_json(fs::path(pl.out) / "waypoints.json", to_json(wc));
      fmt::print("{} on {}: {} robots, {} waypoints{}\n", wc.planner, wc.map_id, wc.robots.size(),
                 wc.total_waypoints(), wc.fallback ? " (strip fallback)" : "");
      return kOk;
    }

    if (*simulate_cmd) {
      const auto s = load_single(sim);
      const auto wc = plan(s.planner, s.fleet, s.map->map);
      const auto runs = execute(s.fleet, wc, s.scenario.dt);
      const fs::path out = sim.out;
      write_json(out / "waypoints.json", to_json(wc));
      for (std::size_t i = 0; i < runs.size(); ++i) {
        std::ostringstream csv;
        write_trajectory_csv(csv, runs[i].trajectory);
        write_file(out / fmt::format("trajectory_{}.csv", i), csv.str());
      }
      const auto r = simulate(s.fleet, s.planner, *s.map, s.scenario.dt, s.scenario.grid_res);
      write_json(out / "simulation.json", to_json(r));
      for (std::size_t i = 0; i < r.energy_wh.size(); ++i)
        fmt::print("robot {}: {:.3f} Wh over {:.1f} s\n", i, r.energy_wh[i], r.duration_s[i]);
      fmt::print("coverage {:.4f}, detected {} of {} targets at delta 0.95\n", r.coverage,
                 count_detected(r.p_hit, 0.95), r.p_hit.size());
      return kOk;
    }
  } catch (const IterationLimit& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kGuard;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfig;
  }
  return kOk;
}
