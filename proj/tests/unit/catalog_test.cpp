#include <gtest/gtest.h>

#include "codesign/catalog.hpp"

using namespace codesign;

namespace {

const Catalog kCat = default_catalog();

RobotDesign design(RobotType t, const std::string& act, const std::string& bat, double cap) {
  return {kCat.actuation_module(t, act), kCat.sensing_module(t, "imp1"), kCat.battery(bat), cap, false};
}

}  // namespace

TEST(RobotCost, WorkedDesign) {
  EXPECT_NEAR(robot_cost(design(RobotType::AerialM, "V1", "NiMH", 231.10)), 667.77, 0.01);
}

TEST(RobotCost, ZeroCapacityIsModulesOnly) {
  EXPECT_DOUBLE_EQ(robot_cost(design(RobotType::AerialL, "V2", "LiPo", 0)), 3500 + 200);
}

TEST(RobotCost, GroundLiPo) {
  EXPECT_NEAR(robot_cost(design(RobotType::Ground, "V1", "LiPo", 100)), 1500 + 150 + 100 / 2.5, 1e-9);
}

TEST(RobotCost, MassInfeasibleThrows) {
  // 5 kg payload minus 0.4 kg sensor leaves room for 460 Wh of NiMH.
  EXPECT_NO_THROW(robot_cost(design(RobotType::AerialM, "V1", "NiMH", 450)));
  EXPECT_THROW(robot_cost(design(RobotType::AerialM, "V1", "NiMH", 462)), InfeasibleDesign);
}

TEST(RobotInterface, IdlePower) {
  EXPECT_DOUBLE_EQ(robot_interface(design(RobotType::AerialM, "V1", "LiPo", 100)).power_idle_total, 70);
  EXPECT_DOUBLE_EQ(robot_interface(design(RobotType::Ground, "V1", "LiPo", 100)).power_idle_total, 185);
  const auto n = robot_interface(null_robot(RobotType::Ground));
  EXPECT_TRUE(n.null);
  EXPECT_EQ(n.cost, 0);
  EXPECT_EQ(n.power_idle_total, 0);
  EXPECT_EQ(robot_cost(null_robot(RobotType::Ground)), 0);
}

TEST(RobotInterface, TypeMismatchThrows) {
  RobotDesign d = design(RobotType::AerialM, "V1", "LiPo", 10);
  d.sensing = kCat.sensing_module(RobotType::Ground, "imp1");
  EXPECT_THROW(robot_interface(d), InfeasibleDesign);
}

TEST(Enumerate, GridCounts) {
  const CapacityGrid grid{400, 2};
  EXPECT_EQ(grid.size(), 200u);
  EXPECT_EQ(robot_design_count(kCat, RobotType::AerialM, grid), 3200u);
  EXPECT_EQ((CapacityGrid{2, 2}).size(), 1u);
  EXPECT_THROW((CapacityGrid{1, 2}).size(), ConfigError);
  EXPECT_THROW((CapacityGrid{10, 0}).size(), ConfigError);
}

TEST(Enumerate, MassFilterMatchesDirectCheck) {
  const CapacityGrid grid{400, 2};
  for (auto t : all_robot_types()) {
    const auto designs = enumerate_robot_designs(kCat, t, grid);
    std::size_t expect = 0;
    for (const auto& a : kCat.actuation_for(t))
      for (const auto& b : kCat.batteries)
        for (int k = 1; k <= 200; ++k)
          if (2.0 * k / b.rho <= a.m_max - kCat.sensing_module(t, "imp1").mass) ++expect;
    EXPECT_EQ(designs.size(), expect);
    // Ground robots never hit the 100 kg ceiling on this grid.
    if (t == RobotType::Ground) {
      EXPECT_EQ(designs.size(), 3200u);
    }
  }
}

TEST(RobotDominates, Examples) {
  const auto m = robot_interface(design(RobotType::AerialM, "V1", "LiPo", 100));
  const auto l = robot_interface(design(RobotType::AerialL, "V1", "LiPo", 100));
  EXPECT_EQ(robot_dominates(m, m), Ordering::Equal);
  EXPECT_EQ(robot_dominates(l, m), Ordering::Incomparable);  // beta_v is worse on the large robot
  const auto null = robot_interface(null_robot(RobotType::AerialM));
  EXPECT_EQ(robot_dominates(m, null), Ordering::GreaterEq);
  EXPECT_EQ(robot_dominates(null, l), Ordering::LessEq);
  const auto m_big = robot_interface(design(RobotType::AerialM, "V1", "LiPo", 200));
  EXPECT_EQ(robot_dominates(m_big, m), Ordering::GreaterEq);
}

TEST(RobotProperties, CostIncreasesWithCapacity) {
  for (auto t : all_robot_types())
    for (const auto& a : kCat.actuation_for(t))
      for (const auto& b : kCat.batteries) {
        double prev = -1;
        for (int k = 0; k <= 20; ++k) {
          const double cap = 0.5 * k;
          const RobotDesign d{a, kCat.sensing_module(t, "imp1"), b, cap, false};
          const double c = robot_cost(d);
          EXPECT_GT(c, prev);
          prev = c;
        }
      }
}

TEST(RobotProperties, MassFilterIsDownwardClosed) {
  for (auto t : all_robot_types())
    for (const auto& a : kCat.actuation_for(t))
      for (const auto& b : kCat.batteries) {
        const auto& s = kCat.sensing_module(t, "imp1");
        bool seen_infeasible = false;
        for (int k = 1; k <= 600; ++k) {
          const bool ok = mass_feasible(a, s, b, 2.0 * k);
          if (seen_infeasible) {
            EXPECT_FALSE(ok);
          }
          seen_infeasible = seen_infeasible || !ok;
        }
      }
}

TEST(Serialization, DesignsRoundTripExactly) {
  const CapacityGrid grid{400, 2};
  std::size_t n = 0;
  for (auto t : all_robot_types())
    for (const auto& d : enumerate_robot_designs(kCat, t, grid)) {
      const auto back = robot_design_from_json(nlohmann::json::parse(to_json(d).dump()));
      ASSERT_EQ(back, d);
      ++n;
    }
  EXPECT_GT(n, 8000u);
}

TEST(Serialization, CatalogFileMatchesBuiltIn) {
  EXPECT_EQ(load_catalog(CODESIGN_DATA_DIR "/catalog.json"), kCat);
  EXPECT_EQ(catalog_from_json(to_json(kCat)), kCat);
}

TEST(Serialization, UnknownFieldRejected) {
  auto j = to_json(kCat);
  j["batteries"][0]["voltage"] = 3.7;
  EXPECT_THROW(catalog_from_json(j), ConfigError);
  auto k = to_json(kCat);
  k["sensing_modules"][0].erase("beta_v");
  EXPECT_THROW(catalog_from_json(k), ConfigError);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), ConfigError);
}

TEST(Signature, Format) {
  EXPECT_EQ(design(RobotType::AerialM, "V1", "NiMH", 231.1).signature(), "AerialM.V1.imp1.NiMH@231.10");
  EXPECT_EQ(design(RobotType::AerialM, "V1", "NiMH", 231.1).motion_signature(), "AerialM.V1.imp1");
}
