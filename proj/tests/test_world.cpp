#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "rne/errors.hpp"
#include "rne/sim/pathing.hpp"
#include "sim_fixtures.hpp"

using namespace rne;
using namespace rne::sim;

TEST(EffectiveSpeed, HpAndObserverScaling) {
  auto r = fixtures::state("c1", Role::kCarrier, {0, 0}, 80, 100);
  EXPECT_DOUBLE_EQ(effective_speed(r, true), 0.3);
  EXPECT_DOUBLE_EQ(effective_speed(r, false), 0.7 * 0.3);
  r.hp = 50;
  EXPECT_DOUBLE_EQ(effective_speed(r, true), 0.15);
  EXPECT_DOUBLE_EQ(effective_sensing(r), 0.5);
  EXPECT_DOUBLE_EQ(effective_observing(r), 0.01);
}

TEST(CurrentNeeds, SevenCategoriesFromState) {
  auto r = fixtures::state("s1", Role::kSupplier, {0, 0}, 50, 80);
  r.carried = 1;
  const auto n = current_needs(r, fixtures::default_roles().at(Role::kSupplier));
  ASSERT_EQ(n.size(), 7u);
  EXPECT_DOUBLE_EQ(n[usar::kHp], 80);
  EXPECT_DOUBLE_EQ(n[usar::kSpeed], 0.3 * 0.8);
  EXPECT_DOUBLE_EQ(n[usar::kEnergy], 45);
  EXPECT_DOUBLE_EQ(n[usar::kResources], 10);
  EXPECT_DOUBLE_EQ(n[usar::kCapacity], 0);
}

TEST(RoleRatios, DefaultsHoldAndViolationsAreNamed) {
  EXPECT_NO_THROW(validate_role_ratios(fixtures::default_roles()));
  auto roles = fixtures::default_roles();
  roles[Role::kObserver].sensing = 5;
  try {
    validate_role_ratios(roles);
    FAIL() << "expected a ratio violation";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("sen_o"), std::string::npos);
  }
  roles = fixtures::default_roles();
  roles.erase(Role::kSupplier);
  EXPECT_THROW(validate_role_ratios(roles), ConfigError);
}

TEST(WorldValidation, DeskScenarioLoads) {
  const auto sc = load_scenario(fixtures::desk_scenario_path());
  EXPECT_EQ(sc.world.width, 40);
  EXPECT_EQ(sc.world.height, 40);
  EXPECT_EQ(sc.robots.size(), 12u);
  EXPECT_EQ(sc.world.mission_ticks(), 6000);
  EXPECT_EQ(sc.world.rest_ticks(), 300);
}

TEST(WorldValidation, RejectsBadWorlds) {
  const auto base = load_scenario(fixtures::desk_scenario_path());
  auto sc = base;
  std::swap(sc.world.sites[0].difficulty, sc.world.sites[1].difficulty);
  EXPECT_THROW(validate_scenario(sc), ConfigError);
  sc = base;
  sc.world.sites[1].radiation.resize(sc.world.sites[0].radiation.size());
  EXPECT_THROW(validate_scenario(sc), ConfigError);
  sc = base;
  sc.world.sites[0].debris.push_back({99, 0});
  EXPECT_THROW(validate_scenario(sc), ConfigError);
  sc = base;
  sc.robots[1].start = sc.robots[0].start;
  EXPECT_THROW(validate_scenario(sc), ConfigError);
  sc = base;
  sc.robots[0].start = sc.world.sites[1].debris.front();
  EXPECT_THROW(validate_scenario(sc), ConfigError);
  sc = base;
  sc.world.sites.pop_back();
  EXPECT_THROW(validate_scenario(sc), ConfigError);
}

TEST(ScenarioLoading, ErrorsCarryLocation) {
  const auto dir = std::filesystem::temp_directory_path() / "rne_world_test";
  std::filesystem::create_directories(dir);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{\n  \"grid\": {\"width\": 40,\n  oops\n}\n";
  try {
    load_scenario(bad);
    FAIL() << "expected a config error";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("bad.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
  }
  EXPECT_THROW(load_scenario(dir / "missing.json"), ConfigError);
}

TEST(Pathing, AvoidsDebrisAndCorners) {
  auto world = fixtures::small_world(6, 6);
  world.sites[0].debris = {{2, 0}, {2, 1}, {2, 2}, {2, 3}};
  const Grid grid(world);
  EXPECT_FALSE(step_allowed(grid, {1, 3}, {2, 4}));  // would clip (2, 3)
  EXPECT_TRUE(step_allowed(grid, {1, 4}, {2, 4}));
  const std::vector<Cell> goal{{3, 0}};
  const auto path = plan_path(grid, {{0, 0}, goal, {}, {}});
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->back(), (Cell{3, 0}));
  Cell prev{0, 0};
  for (Cell c : *path) {
    EXPECT_TRUE(step_allowed(grid, prev, c));
    prev = c;
  }
  const std::vector<Cell> here{{0, 0}};
  EXPECT_TRUE(plan_path(grid, {{0, 0}, here, {}, {}})->empty());
}

TEST(Pathing, EnclosedGoalIsUnreachable) {
  auto world = fixtures::small_world(6, 6);
  world.sites[0].debris = {{2, 2}, {3, 2}, {4, 2}, {2, 3}, {4, 3}, {2, 4}, {3, 4}, {4, 4}};
  const Grid grid(world);
  const std::vector<Cell> goal{{3, 3}};
  EXPECT_FALSE(plan_path(grid, {{0, 0}, goal, {}, {}}).has_value());
}

TEST(Pathing, KnownRadiationCostsExtra) {
  auto world = fixtures::small_world(7, 4);
  const Grid grid(world);
  const std::vector<Cell> goal{{6, 0}};
  auto straight = plan_path(grid, {{0, 0}, goal, {}, {}});
  ASSERT_TRUE(straight);
  EXPECT_EQ(straight->size(), 6u);
  auto detour = plan_path(grid, {{0, 0}, goal, [](Cell c) { return c == Cell{3, 0} ? 10.0 : 0.0; }, {}});
  ASSERT_TRUE(detour);
  EXPECT_EQ(detour->size(), 6u);
  for (Cell c : *detour) EXPECT_NE(c, (Cell{3, 0}));
}
