#pragma once

// Executes waypoint sequences as Reeds-Shepp trajectories with trapezoidal
// speed profiles and integrates the power model over fixed time steps.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include "json.hpp"

#include "codesign/catalog.hpp"
#include "codesign/fleet.hpp"
#include "codesign/planners.hpp"
#include "codesign/reeds_shepp.hpp"

namespace codesign {

struct MotionLimits {
  double v_max = 0;
  double a_lat_max = 0;
  double a_lon_max = 0;
  double r_turn = 0;
  double theta_dot_max = 0;  // carried but not enforced
  PathType path_type = PathType::RS;
};

inline MotionLimits motion_limits(const ActuationModule& a) {
  return {a.v_max, a.a_lat_max, a.a_lon_max, a.r_turn, a.theta_dot_max, a.path_type};
}

struct PowerModel {
  double p_idle_total = 0;  // W
  double c_vel = 0;         // W s^2/m^2
  double c_acc = 0;         // W s^2/m
};

inline PowerModel power_model(const RobotDesign& d) {
  return {d.actuation.p_idle + d.sensing.p_req, d.actuation.c_vel, d.actuation.c_acc};
}

inline double power_at(double v, double a, const PowerModel& m) {
  return m.p_idle_total + m.c_vel * v * v + m.c_acc * std::abs(a);
}

struct Sample {
  double t = 0, x = 0, y = 0, theta = 0;
  double v = 0;  // speed, m/s
  double a = 0;  // rate of change of speed, m/s^2
};

struct Trajectory {
  double dt = 0.1;
  double duration = 0;
  std::vector<Sample> samples;
};

struct LegEnergy {
  double duration = 0;   // s
  double energy_wh = 0;  // Wh
};

struct EnergyReport {
  double energy_wh = 0;
  double duration = 0;
  std::vector<LegEnergy> legs;
};

namespace detail {

struct Phase {
  double duration = 0;
  double s0 = 0;  // distance along the run at phase start
  double v0 = 0;
  double a = 0;
};

// Maximal stretch of segments travelled in one direction; the robot is at rest at both ends.
struct Run {
  Pose start;
  std::vector<RsSegment> segs;
  double r = 1;
  std::vector<Phase> phases;
  double duration = 0;

  Pose pose_at(double s) const {
    Pose p = start;
    for (const auto& seg : segs) {
      const double len = std::abs(seg.length);
      const double step = std::min(s, len);
      p = advance(p, seg.kind, seg.length < 0 ? -step : step, r);
      s -= step;
      if (s <= 0) break;
    }
    return p;
  }
};

inline std::vector<Run> split_runs(const Pose& start, const RsPath& path, double r) {
  std::vector<Run> runs;
  Pose p = start;
  for (const auto& seg : path.segments) {
    if (seg.length == 0) continue;
    const bool fwd = seg.length > 0;
    if (runs.empty() || (runs.back().segs.back().length > 0) != fwd) runs.push_back({p, {}, r, {}, 0});
    runs.back().segs.push_back(seg);
    p = advance(p, seg.kind, seg.length, r);
  }
  return runs;
}

inline void profile_run(Run& run, const MotionLimits& lim) {
  const double acc = lim.a_lon_max;
  const std::size_t n = run.segs.size();
  std::vector<double> len(n), cap(n);
  for (std::size_t i = 0; i < n; ++i) {
    len[i] = std::abs(run.segs[i].length);
    cap[i] = run.segs[i].kind == SegmentKind::Straight ? lim.v_max
                                                      : std::min(lim.v_max, std::sqrt(lim.a_lat_max * run.r));
  }
  std::vector<double> w(n + 1, 0);
  for (std::size_t j = 1; j < n; ++j) w[j] = std::min(cap[j - 1], cap[j]);
  for (std::size_t j = 1; j <= n; ++j) w[j] = std::min(w[j], std::sqrt(w[j - 1] * w[j - 1] + 2 * acc * len[j - 1]));
  for (std::size_t j = n; j-- > 0;) w[j] = std::min(w[j], std::sqrt(w[j + 1] * w[j + 1] + 2 * acc * len[j]));

  double s = 0;
  run.phases.clear();
  run.duration = 0;
  auto push = [&](double dur, double v0, double a) {
    if (dur <= 0) return;
    run.phases.push_back({dur, s, v0, a});
    s += v0 * dur + 0.5 * a * dur * dur;
    run.duration += dur;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double s_seg = s;
    const double wi = w[i], wo = w[i + 1];
    const double peak = std::sqrt(std::min(cap[i] * cap[i], (wi * wi + wo * wo + 2 * acc * len[i]) / 2));
    const double d1 = (peak * peak - wi * wi) / (2 * acc), d3 = (peak * peak - wo * wo) / (2 * acc);
    const double d2 = std::max(0.0, len[i] - d1 - d3);
    push((peak - wi) / acc, wi, acc);
    if (peak > 0) push(d2 / peak, peak, 0);
    push((peak - wo) / acc, peak, -acc);
    s = s_seg + len[i];  // keep distances exact at segment ends
  }
}

struct TimedPhase {
  double t0 = 0;
  const Run* run = nullptr;
  Phase phase;
};

}  // namespace detail

/// Samples the concatenation of `legs` (each starting at rest where the previous ended).
inline Trajectory execute_legs(const Pose& start, const std::vector<RsPath>& legs, const MotionLimits& lim,
                               double dt, std::vector<double>* leg_ends = nullptr) {
  if (!(dt > 0)) throw ConfigError("time step must be positive");
  if (lim.path_type != PathType::RS) throw ConfigError("only Reeds-Shepp motion is supported");
  if (!(lim.a_lon_max > 0) || !(lim.v_max > 0)) throw ConfigError("motion limits must be positive");
  std::vector<detail::Run> runs;
  std::vector<std::size_t> runs_per_leg;
  Pose p = start;
  for (const auto& leg : legs) {
    auto rs = detail::split_runs(p, leg, lim.r_turn);
    for (auto& r : rs) {
      detail::profile_run(r, lim);
      runs.push_back(std::move(r));
    }
    runs_per_leg.push_back(rs.size());
    p = path_end(p, leg, lim.r_turn);
  }
  std::vector<detail::TimedPhase> timeline;
  double t = 0;
  std::size_t ri = 0;
  for (std::size_t l = 0; l < legs.size(); ++l) {
    for (std::size_t k = 0; k < runs_per_leg[l]; ++k, ++ri)
      for (const auto& ph : runs[ri].phases) {
        timeline.push_back({t, &runs[ri], ph});
        t += ph.duration;
      }
    if (leg_ends) leg_ends->push_back(t);
  }

  Trajectory traj;
  traj.dt = dt;
  traj.duration = t;
  const Pose end = p;
  std::size_t idx = 0;
  auto sample_at = [&](double tk) {
    while (idx + 1 < timeline.size() && tk >= timeline[idx + 1].t0) ++idx;
    if (timeline.empty() || tk >= traj.duration) return Sample{tk, end.x, end.y, end.theta, 0, 0};
    const auto& tp = timeline[idx];
    const double tau = tk - tp.t0;
    const double s = tp.phase.s0 + tp.phase.v0 * tau + 0.5 * tp.phase.a * tau * tau;
    const Pose q = tp.run->pose_at(s);
    return Sample{tk, q.x, q.y, q.theta, std::max(0.0, tp.phase.v0 + tp.phase.a * tau), tp.phase.a};
  };
  for (std::size_t k = 0;; ++k) {
    const double tk = static_cast<double>(k) * dt;
    if (tk >= traj.duration - 1e-12) break;
    traj.samples.push_back(sample_at(tk));
  }
  traj.samples.push_back(sample_at(traj.duration));
  return traj;
}

inline Trajectory velocity_profile(const RsPath& path, const Pose& start, const MotionLimits& lim, double dt = 0.1) {
  return execute_legs(start, {path}, lim, dt);
}

/// Left Riemann sum of the power over the samples, in Wh.
inline double integrate_energy_wh(const Trajectory& traj, const PowerModel& pm, double t0 = 0,
                                  double t1 = std::numeric_limits<double>::infinity()) {
  double joules = 0;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const auto& s = traj.samples[k];
    if (s.t < t0 - 1e-12 || s.t >= t1 - 1e-12) continue;
    joules += power_at(s.v, s.a, pm) * (traj.samples[k + 1].t - s.t);
  }
  return joules / 3600.0;
}

/// Heading at each waypoint: towards the next distinct waypoint, else along the last leg.
inline std::vector<double> waypoint_headings(const WaypointSequence& w) {
  std::vector<double> h(w.size(), 0);
  double last = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::size_t j = k + 1;
    while (j < w.size() && dist(w[j], w[k]) <= 1e-12) ++j;
    if (j < w.size()) last = std::atan2(w[j].y - w[k].y, w[j].x - w[k].x);
    h[k] = last;
  }
  return h;
}

struct RobotExecution {
  Trajectory trajectory;
  EnergyReport energy;
};

inline RobotExecution execute_sequence(const WaypointSequence& w, const MotionLimits& lim, const PowerModel& pm,
                                       double dt = 0.1) {
  RobotExecution out;
  if (w.empty()) {
    out.trajectory.dt = dt;
    out.trajectory.samples.push_back({});
    return out;
  }
  const auto h = waypoint_headings(w);
  std::vector<RsPath> legs;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    legs.push_back(reeds_shepp_path({w[k].x, w[k].y, h[k]}, {w[k + 1].x, w[k + 1].y, h[k + 1]}, lim.r_turn));
  std::vector<double> ends;
  out.trajectory = execute_legs({w[0].x, w[0].y, h[0]}, legs, lim, dt, &ends);
  out.energy.duration = out.trajectory.duration;
  out.energy.energy_wh = integrate_energy_wh(out.trajectory, pm);
  double prev = 0;
  for (double e : ends) {
    out.energy.legs.push_back({e - prev, integrate_energy_wh(out.trajectory, pm, prev, e)});
    prev = e;
  }
  return out;
}

inline RobotExecution execute_robot(const RobotDesign& d, const WaypointSequence& w, double dt = 0.1) {
  return execute_sequence(w, motion_limits(d.actuation), power_model(d), dt);
}

/// One execution per robot of the fleet, in expanded order.
inline std::vector<RobotExecution> execute(const Fleet& fleet, const WaypointCollection& wc, double dt = 0.1) {
  const auto robots = fleet.expanded();
  if (robots.size() != wc.robots.size())
    throw ShapeError(fmt::format("fleet has {} robots but the plan has {} sequences", robots.size(), wc.robots.size()));
  std::vector<RobotExecution> out;
  for (std::size_t i = 0; i < robots.size(); ++i) out.push_back(execute_robot(robots[i], wc.robots[i], dt));
  return out;
}

/// The trajectory followed by waiting at its final pose until `tau`.
inline Trajectory extend_idle(const Trajectory& traj, double tau) {
  Trajectory out = traj;
  if (tau <= traj.duration) return out;
  Sample last = traj.samples.back();
  last.v = last.a = 0;
  for (std::size_t k = 0;; ++k) {
    const double tk = static_cast<double>(k) * traj.dt;
    if (tk <= traj.duration + 1e-12) continue;
    if (tk >= tau - 1e-12) break;
    last.t = tk;
    out.samples.push_back(last);
  }
  last.t = tau;
  out.samples.push_back(last);
  out.duration = tau;
  return out;
}

struct SensingTuple {
  double r_sensing = 0;
  double lambda_base = 0;
  double sigma_d = 0;
  double beta_v = 0;  // smaller is better
};

inline SensingTuple sensing_tuple(const SensingModule& s) { return {s.r_sensing, s.lambda_base, s.sigma_d, s.beta_v}; }

inline bool sensing_leq(const SensingTuple& a, const SensingTuple& b) {
  return a.r_sensing <= b.r_sensing && a.lambda_base <= b.lambda_base && a.sigma_d <= b.sigma_d && a.beta_v >= b.beta_v;
}

/// Prefix order: `a` ends no later than `b`, `b` repeats `a` up to its end, and `b` senses at least as well.
inline bool trajectory_leq(const Trajectory& a, const SensingTuple& sa, const Trajectory& b, const SensingTuple& sb) {
  if (std::abs(a.dt - b.dt) > 1e-12) throw ShapeError("trajectories use different time steps");
  if (a.duration > b.duration + 1e-12 || !sensing_leq(sa, sb)) return false;
  std::size_t j = 0;
  for (const auto& s : a.samples) {
    while (j < b.samples.size() && b.samples[j].t < s.t - 1e-9) ++j;
    if (j == b.samples.size() || std::abs(b.samples[j].t - s.t) > 1e-9) return false;
    const auto& q = b.samples[j];
    if (std::abs(q.x - s.x) > 1e-9 || std::abs(q.y - s.y) > 1e-9 || std::abs(q.theta - s.theta) > 1e-9 ||
        std::abs(q.v - s.v) > 1e-9)
      return false;
  }
  return true;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,y,theta,v,a\n";
  for (const auto& s : traj.samples) fmt::print(os, "{},{},{},{},{},{}\n", s.t, s.x, s.y, s.theta, s.v, s.a);
}

}  // namespace codesign
