#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "codesign/indicators.hpp"

using namespace codesign;

TEST(Hypervolume, Examples) {
  EXPECT_DOUBLE_EQ(hypervolume({{0.5, 0.5}}, {1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(hypervolume({{0, 1}, {1, 0}}, {1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(hypervolume({}, {1, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(hypervolume({{0, 0, 0}}, {1, 1, 1}), 1.0);
  // two overlapping boxes: 0.5 + 0.5 - 0.25
  EXPECT_DOUBLE_EQ(hypervolume({{0, 0.5}, {0.5, 0}}, {1, 1}), 0.75);
  EXPECT_THROW(hypervolume({{1.2, 0.5}}, {1, 1}), ConfigError);
  EXPECT_THROW(hypervolume({{0.2}}, {1, 1}), ShapeError);
}

TEST(Hypervolume, MatchesMonteCarlo3d) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    const double hv = hypervolume(pts, {1, 1, 1});
    const int n = 1'000'000;
    int hits = 0;
    for (int k = 0; k < n; ++k) {
      const double x = u(rng), y = u(rng), z = u(rng);
      for (const auto& p : pts)
        if (p[0] <= x && p[1] <= y && p[2] <= z) {
          ++hits;
          break;
        }
    }
    const double est = static_cast<double>(hits) / n;
    const double sigma = std::sqrt(est * (1 - est) / n);
    EXPECT_NEAR(hv, est, 3 * sigma + 1e-12);
  }
}

TEST(Hypervolume, MonotoneUnderAddedPoints) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    double prev = 0;
    for (int i = 0; i < 8; ++i) {
      pts.push_back({u(rng), u(rng), u(rng)});
      const double hv = hypervolume(pts, {1, 1, 1});
      EXPECT_GE(hv, prev - 1e-15);
      prev = hv;
    }
  }
}

TEST(GdPlus, Examples) {
  const std::vector<Point> ref{{0.5, 0.5}};
  EXPECT_EQ(gd_plus(ref, ref), 0.0);
  EXPECT_NEAR(gd_plus({{0.6, 0.6}}, ref), std::sqrt(0.02), 1e-12);
  EXPECT_NEAR(gd_plus({{0.6, 0.6}}, ref), 0.1414, 1e-4);
  EXPECT_EQ(gd_plus({{0.4, 0.3}}, ref), 0.0);  // dominating point
  EXPECT_THROW(gd_plus({}, ref), ConfigError);
  // max versus mean aggregation
  const std::vector<Point> cand{{0.5, 0.5}, {0.7, 0.5}};
  EXPECT_NEAR(gd_plus(cand, ref), 0.2, 1e-12);
  EXPECT_NEAR(gd_plus(cand, ref, Aggregate::Mean), 0.1, 1e-12);
}

TEST(IgdPlus, Examples) {
  const std::vector<Point> ref{{0.2, 0.8}, {0.5, 0.5}, {0.8, 0.2}};
  EXPECT_EQ(igd_plus(ref, ref), 0.0);
  const std::vector<Point> missing{{0.2, 0.8}, {0.8, 0.2}};
  EXPECT_GT(igd_plus(missing, ref), 0.0);
  EXPECT_EQ(gd_plus(missing, ref), 0.0);  // every candidate point sits on the reference
  // a candidate that dominates the whole reference scores zero
  EXPECT_EQ(igd_plus({{0.1, 0.1}}, ref), 0.0);
  EXPECT_THROW(igd_plus(ref, {}), ConfigError);
}

TEST(IgdPlus, PerturbationsOfTheReference) {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> ref;
    for (int i = 0; i < 6; ++i) ref.push_back({u(rng), u(rng), u(rng)});
    auto worse = ref, better = ref;
    const auto k = static_cast<std::size_t>(trial) % ref.size();
    worse[k][0] += 0.1;
    better[k][1] -= 0.1;
    // the shifted point scores zero only if it still dominates some reference point
    bool covered = false;
    for (const auto& z : ref) covered = covered || (worse[k][0] <= z[0] && worse[k][1] <= z[1] && worse[k][2] <= z[2]);
    EXPECT_EQ(gd_plus(worse, ref) > 0.0, !covered);
    EXPECT_LE(gd_plus(worse, ref), 0.1 + 1e-12);
    EXPECT_LE(igd_plus(worse, ref), 0.1 + 1e-12);
    EXPECT_EQ(gd_plus(better, ref), 0.0);
    EXPECT_EQ(igd_plus(better, ref), 0.0);
  }
}

TEST(Compare, NormalizedReport) {
  const std::vector<Point> a{{100, 5, 30}, {200, 3, 20}}, b{{150, 6, 35}, {250, 4, 25}};
  const auto c = compare_fronts({"a", "b"}, {a, b}, 0);
  EXPECT_EQ(c.bounds.lo, (Point{100, 3, 20}));
  EXPECT_EQ(c.bounds.hi, (Point{250, 6, 35}));
  ASSERT_EQ(c.reports.size(), 2u);
  EXPECT_EQ(c.reports[0].gd_plus, 0.0);
  EXPECT_EQ(c.reports[0].igd_plus, 0.0);
  EXPECT_GT(c.reports[1].gd_plus, 0.0);
  EXPECT_GT(c.reports[1].igd_plus, 0.0);
  EXPECT_GT(c.reports[0].hv, c.reports[1].hv);
  for (const auto& r : c.reports) {
    EXPECT_GE(r.hv, 0.0);
    EXPECT_LE(r.hv, 1.0);
  }
  EXPECT_TRUE(front_weakly_dominates(a, a));
  EXPECT_FALSE(front_weakly_dominates(b, a));
  EXPECT_THROW(compare_fronts({"a"}, {a, b}, 0), ShapeError);
  EXPECT_THROW(compare_fronts({"a", "b"}, {a, {}}, 0), ConfigError);
}

TEST(Compare, NormalizationIntoUnitCube) {
  const auto b = normalization_bounds({{{1, 10}, {3, 10}}});
  const auto n = normalize({{1, 10}, {2, 10}, {3, 10}}, b);
  EXPECT_EQ(n[0], (Point{0, 0}));
  EXPECT_EQ(n[1], (Point{0.5, 0}));
  EXPECT_EQ(n[2], (Point{1, 0}));
}
