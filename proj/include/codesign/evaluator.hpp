#pragma once

// Mission metrics over executed trajectories: area coverage by sensing disks,
// exposure-based target detection, and task profiles over one or more maps.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/executor.hpp"
#include "codesign/geometry.hpp"

namespace codesign {

/// Fraction of raster cells whose center lies within r of some sampled position.
inline double coverage_fraction(const std::vector<Trajectory>& trajs, const std::vector<double>& radii,
                                const RectMap& map, double grid_res = 2.0) {
  if (!(grid_res > 0)) throw ConfigError("grid resolution must be positive");
  if (trajs.size() != radii.size()) throw ShapeError("one sensing radius per trajectory expected");
  const auto nx = cells_along(map.width(), grid_res), ny = cells_along(map.height(), grid_res);
  const double cw = map.width() / static_cast<double>(nx), ch = map.height() / static_cast<double>(ny);
  const double x0 = map.rect.x0, y0 = map.rect.y0;
  std::vector<char> hit(nx * ny, 0);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const double r = radii[i];
    if (!(r > 0)) continue;
    double px = std::numeric_limits<double>::quiet_NaN(), py = px;
    for (const auto& s : trajs[i].samples) {
      if (s.x == px && s.y == py) continue;
      px = s.x;
      py = s.y;
      // cell i spans [x0 + i*cw, x0 + (i+1)*cw]; centers at x0 + (i+0.5)*cw
      const double ilo = std::ceil((s.x - r - x0) / cw - 0.5), ihi = std::floor((s.x + r - x0) / cw - 0.5);
      const double jlo = std::ceil((s.y - r - y0) / ch - 0.5), jhi = std::floor((s.y + r - y0) / ch - 0.5);
      const auto i0 = static_cast<long>(std::max(0.0, ilo)), i1 = static_cast<long>(std::min<double>(nx - 1.0, ihi));
      const auto j0 = static_cast<long>(std::max(0.0, jlo)), j1 = static_cast<long>(std::min<double>(ny - 1.0, jhi));
      for (long j = j0; j <= j1; ++j) {
        const double dy = y0 + (static_cast<double>(j) + 0.5) * ch - s.y;
        for (long k = i0; k <= i1; ++k) {
          const std::size_t c = static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(k);
          if (hit[c]) continue;
          const double dx = x0 + (static_cast<double>(k) + 0.5) * cw - s.x;
          if (dx * dx + dy * dy <= r * r) {
            hit[c] = 1;
            ++covered;
          }
        }
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(nx * ny);
}

/// Left Riemann sum of the detection rate seen by `target` along `traj`.
inline double exposure(Vec2 target, const Trajectory& traj, const SensingTuple& s) {
  double e = 0;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const auto& p = traj.samples[k];
    const double d2 = (p.x - target.x) * (p.x - target.x) + (p.y - target.y) * (p.y - target.y);
    if (d2 > s.r_sensing * s.r_sensing) continue;
    const double rate = s.lambda_base * std::exp(-d2 / (2 * s.sigma_d * s.sigma_d)) * std::exp(-s.beta_v * std::abs(p.v));
    e += rate * (traj.samples[k + 1].t - p.t);
  }
  return e;
}

inline double hit_probability(const std::vector<double>& exposures) {
  double total = 0;
  for (double e : exposures) {
    if (e < 0) throw ConfigError("exposure must be non-negative");
    total += e;
  }
  return -std::expm1(-total);
}

/// Fleet hit probability for each target.
inline std::vector<double> hit_probabilities(const std::vector<Vec2>& targets, const std::vector<Trajectory>& trajs,
                                             const std::vector<SensingTuple>& sensing) {
  if (trajs.size() != sensing.size()) throw ShapeError("one sensing tuple per trajectory expected");
  std::vector<double> out;
  for (const auto& t : targets) {
    std::vector<double> e;
    for (std::size_t i = 0; i < trajs.size(); ++i) e.push_back(exposure(t, trajs[i], sensing[i]));
    out.push_back(hit_probability(e));
  }
  return out;
}

inline int count_detected(const std::vector<double>& p_hit, double delta) {
  if (!(delta > 0 && delta < 1)) throw ConfigError("detection confidence must lie in (0, 1)");
  int n = 0;
  for (double p : p_hit) n += p >= delta;
  return n;
}

inline int detection_count(const std::vector<Vec2>& targets, const std::vector<Trajectory>& trajs,
                           const std::vector<SensingTuple>& sensing, double delta) {
  return count_detected(hit_probabilities(targets, trajs, sensing), delta);
}

// ---------------------------------------------------------------------------
// Task profiles

struct MetricVector {
  double coverage = 0;
  int detections = 0;
};

enum class MetricKind { Coverage, Detection };

inline std::string to_string(MetricKind m) { return m == MetricKind::Coverage ? "coverage" : "detection"; }

inline MetricKind metric_from_string(const std::string& s) {
  if (s == "coverage") return MetricKind::Coverage;
  if (s == "detection") return MetricKind::Detection;
  throw ConfigError("unknown metric '" + s + "'");
}

struct MetricRequirement {
  MetricKind metric = MetricKind::Coverage;
  std::string map_id;
  double threshold = 0;  // fraction for coverage, count for detection
};

struct TaskProfile {
  std::string name;
  double delta = 0.95;
  std::vector<MetricRequirement> requirements;

  std::vector<std::string> map_ids() const {
    std::vector<std::string> ids;
    for (const auto& r : requirements)
      if (std::find(ids.begin(), ids.end(), r.map_id) == ids.end()) ids.push_back(r.map_id);
    return ids;
  }
};

inline bool task_satisfied(const MetricVector& m, double lambda_c, int lambda_delta) {
  return m.coverage >= lambda_c && m.detections >= lambda_delta;
}

/// `values` are ordered like the profile's requirements.
inline bool task_satisfied(const std::vector<double>& values, const TaskProfile& task) {
  if (values.size() != task.requirements.size()) throw ShapeError("one metric value per requirement expected");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < task.requirements[i].threshold) return false;
  return true;
}

/// Executed trajectories of the whole fleet on one map.
struct MapRun {
  const RectMap* map = nullptr;
  const std::vector<Vec2>* targets = nullptr;
  std::vector<Trajectory> trajectories;
};

/// Metric values for each (metric, map) entry of `index`, in order.
inline std::vector<double> multi_map_evaluate(const std::vector<SensingTuple>& sensing,
                                              const std::map<std::string, MapRun>& runs,
                                              const std::vector<MetricRequirement>& index, double delta,
                                              double grid_res = 2.0) {
  std::vector<double> radii;
  for (const auto& s : sensing) radii.push_back(s.r_sensing);
  std::vector<double> out;
  for (const auto& req : index) {
    const auto it = runs.find(req.map_id);
    if (it == runs.end()) throw ConfigError("no trajectories for map '" + req.map_id + "'");
    const auto& run = it->second;
    if (req.metric == MetricKind::Coverage) {
      out.push_back(coverage_fraction(run.trajectories, radii, *run.map, grid_res));
    } else {
      static const std::vector<Vec2> none;
      out.push_back(detection_count(run.targets ? *run.targets : none, run.trajectories, sensing, delta));
    }
  }
  return out;
}

inline nlohmann::json to_json(const TaskProfile& t) {
  nlohmann::json reqs = nlohmann::json::array();
  for (const auto& r : t.requirements)
    reqs.push_back({{"metric", to_string(r.metric)}, {"map", r.map_id}, {"threshold", r.threshold}});
  return {{"name", t.name}, {"delta", t.delta}, {"requirements", reqs}};
}

inline TaskProfile task_from_json(const nlohmann::json& j) {
  TaskProfile t;
  t.name = j.at("name").get<std::string>();
  t.delta = j.value("delta", 0.95);
  if (!(t.delta > 0 && t.delta < 1)) throw ConfigError("task '" + t.name + "': delta must lie in (0, 1)");
  for (const auto& r : j.at("requirements")) {
    MetricRequirement m{metric_from_string(r.at("metric").get<std::string>()), r.at("map").get<std::string>(),
                        r.at("threshold").get<double>()};
    if (m.metric == MetricKind::Coverage && (m.threshold < 0 || m.threshold > 1))
      throw ConfigError("task '" + t.name + "': coverage threshold must lie in [0, 1]");
    if (m.metric == MetricKind::Detection && (m.threshold < 0 || m.threshold != std::floor(m.threshold)))
      throw ConfigError("task '" + t.name + "': detection threshold must be a non-negative integer");
    t.requirements.push_back(std::move(m));
  }
  return t;
}

}  // namespace codesign
