#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "codesign/evaluator.hpp"
#include "codesign/planners.hpp"

using namespace codesign;

namespace {

const Catalog kCat = default_catalog();

Trajectory stationary(Vec2 p, double T, double dt = 0.1) {
  Trajectory tr;
  tr.dt = dt;
  tr.duration = T;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= T - 1e-12) break;
    tr.samples.push_back({t, p.x, p.y, 0, 0, 0});
  }
  tr.samples.push_back({T, p.x, p.y, 0, 0, 0});
  return tr;
}

// Constant-speed straight pass from a to b.
Trajectory pass(Vec2 a, Vec2 b, double v, double dt) {
  Trajectory tr;
  tr.dt = dt;
  const double T = dist(a, b) / v;
  tr.duration = T;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= T - 1e-12) break;
    const Vec2 p = a + (t / T) * (b - a);
    tr.samples.push_back({t, p.x, p.y, 0, v, 0});
  }
  tr.samples.push_back({T, b.x, b.y, 0, v, 0});
  return tr;
}

// Cell-center raster checked against every sample, no bounding-box shortcuts.
double brute_coverage(const std::vector<Trajectory>& trajs, const std::vector<double>& radii, const RectMap& m,
                      double res) {
  const auto nx = cells_along(m.width(), res), ny = cells_along(m.height(), res);
  const double cw = m.width() / nx, ch = m.height() / ny;
  std::size_t hit = 0;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const Vec2 c{m.rect.x0 + (i + 0.5) * cw, m.rect.y0 + (j + 0.5) * ch};
      bool in = false;
      for (std::size_t r = 0; r < trajs.size() && !in; ++r)
        for (const auto& s : trajs[r].samples)
          if (dist(c, {s.x, s.y}) <= radii[r]) {
            in = true;
            break;
          }
      hit += in;
    }
  return static_cast<double>(hit) / (nx * ny);
}

SensingTuple aerial_m_sensing() { return sensing_tuple(kCat.sensing_module(RobotType::AerialM, "imp1")); }

}  // namespace

TEST(Coverage, Examples) {
  const RectMap m("M", 400, 800);
  EXPECT_EQ(coverage_fraction({}, {}, m), 0.0);
  const double c = coverage_fraction({stationary({200, 400}, 1)}, {12}, m);
  EXPECT_NEAR(c, std::numbers::pi * 144 / 320000, 0.0002);
  EXPECT_EQ(coverage_fraction({stationary({3, 5}, 1)}, {1000}, m), 1.0);
  EXPECT_THROW(coverage_fraction({}, {}, m, 0), ConfigError);
  EXPECT_THROW(coverage_fraction({stationary({0, 0}, 1)}, {}, m), ShapeError);
}

TEST(Coverage, MatchesBruteForceRaster) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const RectMap m("M", 20 + 60 * u(rng), 20 + 60 * u(rng), {-10 * u(rng), 5 * u(rng)});
    std::vector<Trajectory> trajs;
    std::vector<double> radii;
    const int n = 1 + trial % 3;
    for (int i = 0; i < n; ++i) {
      const Vec2 a{m.rect.x0 + m.width() * u(rng), m.rect.y0 + m.height() * u(rng)};
      const Vec2 b{m.rect.x0 + m.width() * u(rng), m.rect.y0 + m.height() * u(rng)};
      trajs.push_back(pass(a, b, 5, 0.5));
      radii.push_back(2 + 10 * u(rng));
    }
    const double res = 0.7 + 2 * u(rng);
    EXPECT_DOUBLE_EQ(coverage_fraction(trajs, radii, m, res), brute_coverage(trajs, radii, m, res));
  }
}

TEST(Coverage, MonotoneInTrajectoriesAndRadius) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 100);
  const RectMap m("M", 100, 100);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Trajectory> trajs;
    std::vector<double> radii;
    double prev = 0;
    for (int i = 0; i < 4; ++i) {
      trajs.push_back(pass({u(rng), u(rng)}, {u(rng), u(rng)}, 10, 0.2));
      radii.push_back(5 + u(rng) / 10);
      const double c = coverage_fraction(trajs, radii, m);
      EXPECT_GE(c, prev);
      prev = c;
    }
    auto bigger = radii;
    for (auto& r : bigger) r *= 1.3;
    EXPECT_GE(coverage_fraction(trajs, bigger, m), prev);
  }
}

TEST(Coverage, GridConvergenceOnPlannedMission) {
  const RectMap m("M", 100, 200);
  const std::vector<PlannerRobot> robots{{10, 12}, {5, 30}};
  const auto d_m = RobotDesign{kCat.actuation_module(RobotType::AerialM, "V1"),
                               kCat.sensing_module(RobotType::AerialM, "imp1"), kCat.battery("LiPo"), 100, false};
  const auto d_g = RobotDesign{kCat.actuation_module(RobotType::Ground, "V1"),
                               kCat.sensing_module(RobotType::Ground, "imp1"), kCat.battery("LiPo"), 100, false};
  for (auto kind : all_planners()) {
    const auto wc = plan(kind, robots, m);
    std::vector<Trajectory> trajs{execute_robot(d_m, wc.robots[0]).trajectory,
                                  execute_robot(d_g, wc.robots[1]).trajectory};
    const std::vector<double> radii{12, 30};
    const double c2 = coverage_fraction(trajs, radii, m, 2), c1 = coverage_fraction(trajs, radii, m, 1);
    EXPECT_LT(std::abs(c2 - c1), 0.01 * c1) << to_string(kind);
  }
}

TEST(Exposure, Examples) {
  const auto s = aerial_m_sensing();
  EXPECT_EQ(exposure({500, 500}, stationary({0, 0}, 10), s), 0.0);
  EXPECT_NEAR(exposure({3, 4}, stationary({3, 4}, 7), s), s.lambda_base * 7, 1e-9);
  // right at the edge of the disk still counts, just beyond it does not
  EXPECT_GT(exposure({s.r_sensing, 0}, stationary({0, 0}, 1), s), 0.0);
  EXPECT_EQ(exposure({s.r_sensing + 1e-9, 0}, stationary({0, 0}, 1), s), 0.0);
}

TEST(Exposure, PassingTargetMatchesFineQuadrature) {
  const auto s = aerial_m_sensing();
  const Vec2 target{0, 5};
  // independent midpoint rule on the continuous integrand, 1e-3 s step
  double fine = 0;
  const double h = 1e-3;
  for (double t = h / 2; t < 10; t += h) {
    const double x = -50 + 10 * t, d2 = x * x + 25;
    if (d2 <= s.r_sensing * s.r_sensing)
      fine += s.lambda_base * std::exp(-d2 / (2 * s.sigma_d * s.sigma_d)) * std::exp(-s.beta_v * 10) * h;
  }
  EXPECT_GT(fine, 0.5);
  // the disk-edge cutoff is resolved to one sample, so the error shrinks with the step
  double prev_err = 1e9;
  for (double dt : {0.1, 0.05, 0.01, 0.001}) {
    const double err = std::abs(exposure(target, pass({-50, 0}, {50, 0}, 10, dt), s) - fine);
    EXPECT_LT(err, 0.03 * fine) << dt;
    EXPECT_LE(err, prev_err + 1e-12) << dt;
    prev_err = err;
  }
  EXPECT_LT(std::abs(exposure(target, pass({-50, 0}, {50, 0}, 10, 0.01), s) - fine), 0.01 * fine);
}

TEST(Exposure, MonotoneInSensingParameters) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec2 tgt{40 * u(rng), 40 * u(rng)};
    const auto tr = pass({40 * u(rng), 40 * u(rng)}, {40 * u(rng), 40 * u(rng)}, 1 + 9 * u(rng), 0.1);
    const SensingTuple s{10 + 20 * u(rng), 0.5 + 0.5 * u(rng), 5 + 20 * u(rng), 0.05 * u(rng)};
    const double e = exposure(tgt, tr, s);
    auto more_l = s, more_sd = s, less_b = s, more_r = s;
    more_l.lambda_base *= 1.1;
    more_sd.sigma_d *= 1.1;
    less_b.beta_v *= 0.5;
    more_r.r_sensing *= 1.1;
    EXPECT_GE(exposure(tgt, tr, more_l), e);
    EXPECT_GE(exposure(tgt, tr, more_sd), e);
    EXPECT_GE(exposure(tgt, tr, less_b), e);
    EXPECT_GE(exposure(tgt, tr, more_r), e);
  }
}

TEST(HitProbability, Examples) {
  EXPECT_EQ(hit_probability({}), 0.0);
  EXPECT_EQ(hit_probability({0, 0}), 0.0);
  const auto s = aerial_m_sensing();
  const double e = exposure({1, 1}, stationary({1, 1}, 5), s);
  EXPECT_NEAR(hit_probability({e}), 1 - std::exp(-4.75), 1e-9);
  EXPECT_NEAR(hit_probability({e}), 0.99134, 1e-5);
  EXPECT_GT(hit_probability({0.3, 0.3}), hit_probability({0.3}));
  EXPECT_THROW(hit_probability({-1}), ConfigError);
}

TEST(HitProbability, IncreasingConcaveBounded) {
  double prev = -1, prev_step = 1;
  for (int k = 1; k <= 200; ++k) {
    const double p = hit_probability({0.05 * k});
    EXPECT_GT(p, prev);
    EXPECT_LT(p, 1.0);
    if (k > 1) {
      EXPECT_LE(p - prev, prev_step + 1e-15);
      prev_step = p - prev;
    }
    prev = p;
  }
}

TEST(Detection, Examples) {
  const auto s = aerial_m_sensing();
  EXPECT_EQ(detection_count({}, {stationary({0, 0}, 10)}, {s}, 0.95), 0);
  const std::vector<Vec2> tg{{0, 0}, {50, 0}};
  EXPECT_EQ(detection_count(tg, {stationary({0, 0}, 30), stationary({50, 0}, 30)}, {s, s}, 0.95), 2);
  EXPECT_THROW(detection_count(tg, {}, {}, 1.0), ConfigError);
  EXPECT_THROW(detection_count(tg, {}, {}, 0.0), ConfigError);
}

TEST(Detection, FiveTargetsAgainstClosedForm) {
  const auto s = aerial_m_sensing();
  // one robot dwells on each target for a different time; a second robot adds dwell on the last two
  const std::vector<Vec2> tg{{0, 0}, {40, 0}, {80, 0}, {120, 0}, {160, 0}};
  const std::vector<double> dwell{1, 2, 3, 4, 5}, extra{0, 0, 0.5, 0, 2};
  std::vector<Trajectory> trajs;
  std::vector<SensingTuple> sens;
  for (std::size_t i = 0; i < tg.size(); ++i) {
    trajs.push_back(stationary(tg[i], dwell[i]));
    sens.push_back(s);
    if (extra[i] > 0) {
      trajs.push_back(stationary(tg[i], extra[i]));
      sens.push_back(s);
    }
  }
  int expect = 0;
  for (std::size_t i = 0; i < tg.size(); ++i) expect += 1 - std::exp(-s.lambda_base * (dwell[i] + extra[i])) >= 0.95;
  EXPECT_EQ(expect, 3);
  EXPECT_EQ(detection_count(tg, trajs, sens, 0.95), expect);
}

TEST(TaskProfile, Examples) {
  EXPECT_TRUE(task_satisfied(MetricVector{0.96, 3}, 0.95, 3));
  EXPECT_FALSE(task_satisfied(MetricVector{0.94, 5}, 0.95, 0));
  EXPECT_TRUE(task_satisfied(MetricVector{0, 0}, 0, 0));
  TaskProfile t{"T", 0.95, {{MetricKind::Coverage, "M1", 0.9}, {MetricKind::Detection, "M2", 2}}};
  EXPECT_TRUE(task_satisfied({0.9, 2}, t));
  EXPECT_FALSE(task_satisfied({0.9, 1}, t));
  EXPECT_THROW(task_satisfied({0.9}, t), ShapeError);
  EXPECT_EQ(t.map_ids(), (std::vector<std::string>{"M1", "M2"}));
}

TEST(TaskProfile, JsonRoundTripAndValidation) {
  TaskProfile t{"T3", 0.9, {{MetricKind::Coverage, "M1", 0.95}, {MetricKind::Detection, "M2", 4}}};
  const auto back = task_from_json(to_json(t));
  EXPECT_EQ(back.name, "T3");
  EXPECT_EQ(back.delta, 0.9);
  ASSERT_EQ(back.requirements.size(), 2u);
  EXPECT_EQ(back.requirements[1].metric, MetricKind::Detection);
  EXPECT_EQ(back.requirements[1].threshold, 4);
  auto bad = to_json(t);
  bad["requirements"][0]["threshold"] = 1.5;
  EXPECT_THROW(task_from_json(bad), ConfigError);
  bad = to_json(t);
  bad["requirements"][1]["threshold"] = 2.5;
  EXPECT_THROW(task_from_json(bad), ConfigError);
  bad = to_json(t);
  bad["delta"] = 1.0;
  EXPECT_THROW(task_from_json(bad), ConfigError);
}

TEST(MultiMap, TuplingAndMissingMap) {
  const RectMap m1("M1", 100, 100), m2("M2", 50, 50);
  const std::vector<Vec2> tg2{{25, 25}};
  const auto s = aerial_m_sensing();
  std::map<std::string, MapRun> runs;
  runs["M1"] = {&m1, nullptr, {stationary({50, 50}, 1)}};
  runs["M2"] = {&m2, &tg2, {stationary({25, 25}, 10)}};
  const auto single = multi_map_evaluate({s}, runs, {{MetricKind::Coverage, "M1", 0}}, 0.95);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], coverage_fraction(runs["M1"].trajectories, {s.r_sensing}, m1));
  const auto pair =
      multi_map_evaluate({s}, runs, {{MetricKind::Coverage, "M1", 0}, {MetricKind::Detection, "M2", 0}}, 0.95);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_EQ(pair[0], single[0]);
  EXPECT_EQ(pair[1], 1.0);
  try {
    multi_map_evaluate({s}, runs, {{MetricKind::Detection, "M9", 0}}, 0.95);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("M9"), std::string::npos);
  }
}

TEST(MultiMap, CombinedTaskImpliesParts) {
  // Task 3 asks for Task 1's coverage on M1 and Task 2's detections on M2.
  const TaskProfile t1{"T1", 0.95, {{MetricKind::Coverage, "M1", 0.35}}};
  const TaskProfile t2{"T2", 0.95, {{MetricKind::Detection, "M2", 2}}};
  const TaskProfile t3{"T3", 0.95, {t1.requirements[0], t2.requirements[0]}};
  const RectMap m1("M1", 80, 80), m2("M2", 80, 80);
  const std::vector<Vec2> tg{{10, 10}, {40, 40}, {70, 20}, {20, 70}, {60, 60}};
  const auto s = aerial_m_sensing();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0, 80);
  int sat3 = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Trajectory> a, b;
    std::vector<SensingTuple> sens;
    for (int i = 0; i < 3; ++i) {
      a.push_back(pass({u(rng), u(rng)}, {u(rng), u(rng)}, 2, 0.25));
      b.push_back(stationary(tg[static_cast<std::size_t>(trial + i) % tg.size()], u(rng) / 12));
      sens.push_back(s);
    }
    std::map<std::string, MapRun> runs;
    runs["M1"] = {&m1, nullptr, a};
    runs["M2"] = {&m2, &tg, b};
    const auto v3 = multi_map_evaluate(sens, runs, t3.requirements, 0.95);
    const auto v1 = multi_map_evaluate(sens, runs, t1.requirements, 0.95);
    const auto v2 = multi_map_evaluate(sens, runs, t2.requirements, 0.95);
    if (task_satisfied(v3, t3)) {
      ++sat3;
      EXPECT_TRUE(task_satisfied(v1, t1));
      EXPECT_TRUE(task_satisfied(v2, t2));
    }
    EXPECT_EQ(task_satisfied(v3, t3), task_satisfied(v1, t1) && task_satisfied(v2, t2));
  }
  EXPECT_GT(sat3, 0);
}
