#include <gtest/gtest.h>

#include <random>

#include "codesign/reeds_shepp.hpp"

using namespace codesign;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fine-step integration of the path, independent of the closed-form arc update.
Pose integrate(Pose p, const RsPath& path, double r) {
  for (const auto& s : path.segments) {
    const int n = 4000;
    const double ds = s.length / n;
    for (int i = 0; i < n; ++i) {
      double dth = 0;
      if (s.kind == SegmentKind::Left) dth = ds / r;
      if (s.kind == SegmentKind::Right) dth = -ds / r;
      const double chord = s.kind == SegmentKind::Straight ? ds : 2 * r * std::sin(dth / 2) * (ds < 0 ? -1 : 1) * (dth < 0 ? -1 : 1);
      p.x += chord * std::cos(p.theta + dth / 2);
      p.y += chord * std::sin(p.theta + dth / 2);
      p.theta += dth;
    }
  }
  return p;
}

double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}

bool reaches(const Pose& q0, const Pose& q1, const RsPath& p, double r) {
  const Pose e = integrate(q0, p, r);
  return std::hypot(e.x - q1.x, e.y - q1.y) < 1e-6 && angle_gap(e.theta, q1.theta) < 1e-6;
}

}  // namespace

TEST(ReedsShepp, StraightLine) {
  const auto p = reeds_shepp_path({0, 0, 0}, {10, 0, 0}, 1);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].kind, SegmentKind::Straight);
  EXPECT_NEAR(p.segments[0].length, 10, 1e-12);
  const auto back = reeds_shepp_path({0, 0, 0}, {-4, 0, 0}, 1);
  EXPECT_NEAR(back.length(), 4, 1e-12);
  EXPECT_LT(back.segments[0].length, 0);
}

TEST(ReedsShepp, TurnInPlaceMatchesAllWords) {
  const Pose q0{0, 0, 0}, q1{0, 0, kPi};
  const auto cands = reeds_shepp_candidates(q0, q1, 1);
  ASSERT_FALSE(cands.empty());
  double best = 1e9;
  for (const auto& c : cands)
    if (reaches(q0, q1, c, 1)) best = std::min(best, c.length());
  const auto p = reeds_shepp_path(q0, q1, 1);
  EXPECT_NEAR(p.length(), best, 1e-9);
  EXPECT_TRUE(reaches(q0, q1, p, 1));
}

TEST(ReedsShepp, EveryCandidateReachesGoalAndShortestIsChosen) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> pos(-20, 20), ang(-kPi, kPi), rad(0.5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const Pose q0{pos(rng), pos(rng), ang(rng)}, q1{pos(rng), pos(rng), ang(rng)};
    const double r = rad(rng);
    const auto cands = reeds_shepp_candidates(q0, q1, r);
    ASSERT_FALSE(cands.empty());
    double best = 1e18;
    for (const auto& c : cands) {
      ASSERT_TRUE(reaches(q0, q1, c, r)) << c.word << " trial " << trial;
      best = std::min(best, c.length());
    }
    const auto p = reeds_shepp_path(q0, q1, r);
    EXPECT_NEAR(p.length(), best, 1e-9);
    EXPECT_TRUE(reaches(q0, q1, p, r));
    EXPECT_GE(p.length(), std::hypot(q1.x - q0.x, q1.y - q0.y) - 1e-9);
  }
}

TEST(ReedsShepp, ReversalSymmetry) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> pos(-15, 15), ang(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const Pose q0{pos(rng), pos(rng), ang(rng)}, q1{pos(rng), pos(rng), ang(rng)};
    EXPECT_NEAR(reeds_shepp_path(q0, q1, 2).length(), reeds_shepp_path(q1, q0, 2).length(), 1e-7);
  }
}

TEST(ReedsShepp, SplittingAtAStraightPointKeepsLength) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> pos(-30, 30), ang(-kPi, kPi), frac(0.2, 0.8);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 100; ++trial) {
    const Pose q0{pos(rng), pos(rng), ang(rng)}, q1{pos(rng), pos(rng), ang(rng)};
    const double r = 1.5;
    const auto p = reeds_shepp_path(q0, q1, r);
    // Find a straight segment and a point inside it.
    Pose at = q0;
    for (const auto& s : p.segments) {
      if (s.kind == SegmentKind::Straight && std::abs(s.length) > 1) {
        const Pose m = advance(at, s.kind, frac(rng) * s.length, r);
        const double split = reeds_shepp_path(q0, m, r).length() + reeds_shepp_path(m, q1, r).length();
        EXPECT_NEAR(split, p.length(), 1e-7);
        ++checked;
        break;
      }
      at = advance(at, s.kind, s.length, r);
    }
  }
  EXPECT_GE(checked, 100);
}
