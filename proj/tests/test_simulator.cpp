#include <gtest/gtest.h>

#include <chrono>
#include <set>
#include <sstream>

#include "rne/errors.hpp"
#include "rne/harness.hpp"
#include "sim_fixtures.hpp"

using namespace rne;
using namespace rne::sim;
using fixtures::state;

namespace {

RobotState heading_to(RobotState r, Cell site, int group) {
  r.mode = Mode::kActive;
  r.activity = Activity::kToSite;
  r.target = site;
  r.group = group;
  r.task = group == 0 ? Difficulty::kEasy : Difficulty::kHard;
  return r;
}

// Fast enough to move every tick even without an observer.
RobotState runner(RobotState r, Cell site) {
  r = heading_to(std::move(r), site, 1);
  r.base_speed = 2.0;
  return r;
}

WorldConfig world_with_work() {
  auto world = fixtures::small_world();
  world.sites[1].rescuees = 5;
  return world;
}

GroupAssignment split(std::vector<std::string> hard, std::vector<std::string> easy) {
  return {std::move(hard), std::move(easy), Strategy::kRne, {}};
}

}  // namespace

TEST(Step, OneMoveCostsExactlyTheStepEnergy) {
  auto world = world_with_work();
  auto r = runner(state("c1", Role::kCarrier, {5, 2}, 80, 100), world.sites[1].position);
  auto sim = fixtures::fixture_sim(world, {r});
  const double before = sim.robots()[0].energy;
  sim.step();
  EXPECT_NE(sim.robots()[0].position, (Cell{5, 2}));
  EXPECT_EQ(sim.robots()[0].energy, before - 0.0045);
  EXPECT_EQ(sim.robots()[0].hp, 100.0);
}

TEST(Step, IdleOnRadiationCostsExactlyTheTickHp) {
  auto world = fixtures::small_world();
  world.sites[1].radiation = {{3, 3}};
  auto sim = fixtures::fixture_sim(world, {state("c1", Role::kCarrier, {3, 3}, 70, 90)});
  sim.step();
  EXPECT_EQ(sim.robots()[0].hp, 90.0 - 0.0003);
  EXPECT_EQ(sim.robots()[0].energy, 70.0);
  EXPECT_EQ(sim.robots()[0].position, (Cell{3, 3}));
}

TEST(Step, DroppingBelowThresholdSendsRobotToRest) {
  auto world = world_with_work();
  auto r = runner(state("c1", Role::kCarrier, {5, 2}, 30.0045, 100), world.sites[1].position);
  auto sim = fixtures::fixture_sim(world, {r});
  sim.step();
  EXPECT_NEAR(sim.robots()[0].energy, 30.0, 1e-12);
  EXPECT_EQ(sim.robots()[0].mode, Mode::kActive);
  sim.step();
  EXPECT_NEAR(sim.robots()[0].energy, 29.9955, 1e-12);
  EXPECT_EQ(sim.robots()[0].mode, Mode::kToRest);
}

TEST(Step, ThresholdTriggersAt29_9995) {
  auto world = world_with_work();
  auto r = runner(state("c1", Role::kCarrier, {5, 2}, 30.004, 100), world.sites[1].position);
  auto sim = fixtures::fixture_sim(world, {r});
  sim.step();
  EXPECT_NEAR(sim.robots()[0].energy, 29.9995, 1e-12);
  EXPECT_EQ(sim.robots()[0].mode, Mode::kToRest);
  EXPECT_TRUE(sim.robots()[0].restore_energy);
  EXPECT_FALSE(sim.robots()[0].restore_hp);
}

TEST(Step, RestCycleRestoresAndReturnsToStart) {
  auto world = fixtures::small_world();
  auto r = state("c1", Role::kCarrier, {8, 2}, 25, 100);
  r.base_speed = 2.0;
  r.group = 1;
  auto sim = fixtures::fixture_sim(world, {r});
  bool saw_resting = false;
  long long rest_ticks = 0;
  int moves_home = 0;
  Cell prev = r.position;
  for (int t = 0; t < 1000 && !(saw_resting && sim.robots()[0].mode == Mode::kWaiting); ++t) {
    sim.step();
    const auto& now = sim.robots()[0];
    if (now.mode == Mode::kResting) {
      saw_resting = true;
      ++rest_ticks;
      EXPECT_TRUE(now.docked);
    } else if (saw_resting && now.position != prev && now.position != world.rest_position) {
      ++moves_home;
    }
    prev = now.position;
  }
  const auto& after = sim.robots()[0];
  EXPECT_TRUE(saw_resting);
  EXPECT_EQ(rest_ticks, 300);
  EXPECT_EQ(after.mode, Mode::kWaiting);
  EXPECT_EQ(after.position, (Cell{8, 2}));
  EXPECT_GT(moves_home, 0);
  double want = 100.0;
  for (int i = 0; i < moves_home; ++i) want -= 0.0045;
  EXPECT_EQ(after.energy, want);
  EXPECT_FALSE(after.rest_cycle);
}

TEST(Rescue, RefusalsAndSharing) {
  auto carrier = state("c1", Role::kCarrier, {1, 1});
  auto supplier = state("s1", Role::kSupplier, {2, 2});
  SiteState site{{1, 2}, Difficulty::kEasy, 5};
  std::vector<RobotState*> group{&carrier, &supplier};

  EXPECT_EQ(rescue(carrier, group, site), RescueOutcome::kRescued);
  EXPECT_EQ(supplier.resources, 9);
  EXPECT_EQ(carrier.resources, 1);
  EXPECT_EQ(carrier.carried, 1);
  EXPECT_EQ(site.remaining, 4);

  carrier.carried = carrier.capacity;
  EXPECT_EQ(rescue(carrier, group, site), RescueOutcome::kNoCapacity);
  carrier.carried = 0;
  carrier.resources = supplier.resources = 0;
  EXPECT_EQ(rescue(carrier, group, site), RescueOutcome::kNoResources);
  EXPECT_EQ(site.remaining, 4);
  carrier.resources = 1;
  carrier.position = {5, 5};
  EXPECT_EQ(rescue(carrier, group, site), RescueOutcome::kNotAdjacent);
  carrier.position = {0, 1};
  site.remaining = 0;
  EXPECT_EQ(rescue(carrier, group, site), RescueOutcome::kSiteEmpty);
}

TEST(RunRound, ZeroRescueesEndsEmpty) {
  auto world = fixtures::small_world();
  auto sim = fixtures::fixture_sim(world, {state("c1", Role::kCarrier, {3, 0}), state("c2", Role::kCarrier, {5, 0})});
  const auto round = sim.run_round(split({"c2"}, {"c1"}));
  EXPECT_EQ(round.rescued_easy + round.rescued_hard, 0);
  EXPECT_FALSE(round.truncated);
  EXPECT_TRUE(sim.all_waiting());
}

TEST(RunRound, OneCarrierRescuesWhatIsThere) {
  auto world = fixtures::small_world();
  world.sites[0].rescuees = 3;
  auto sim = fixtures::fixture_sim(world, {state("c1", Role::kCarrier, {3, 0}), state("s1", Role::kSupplier, {5, 0})});
  // Carrier and supplier share the easy site; the hard group is empty.
  const auto round = sim.run_round(split({}, {"c1", "s1"}));
  EXPECT_EQ(round.rescued_easy, 3);
  EXPECT_EQ(sim.site(Difficulty::kEasy).remaining, 0);
  EXPECT_EQ(sim.metrics().rescued_easy, 3);
  EXPECT_TRUE(sim.all_waiting());
  EXPECT_EQ(sim.robot("c1").carried, 0);
}

TEST(RunRound, ClockExpiryTruncates) {
  auto world = fixtures::small_world();
  world.sites[1].rescuees = 50;
  world.mission_seconds = 2.0;
  auto sim = fixtures::fixture_sim(world, {state("c1", Role::kCarrier, {0, 0})});
  const auto round = sim.run_round(split({"c1"}, {}));
  EXPECT_TRUE(round.truncated);
  EXPECT_EQ(sim.tick(), 20);
  EXPECT_EQ(round.end_tick, 20);
}

TEST(RunRound, RequiresEveryoneWaiting) {
  auto world = fixtures::small_world();
  auto r = state("c1", Role::kCarrier, {0, 0});
  r.mode = Mode::kActive;
  auto sim = fixtures::fixture_sim(world, {r});
  EXPECT_THROW(sim.run_round(split({"c1"}, {})), ConfigError);
}

TEST(RunTrial, MissionLengthAndEmptyRoster) {
  auto sc = load_scenario(fixtures::desk_scenario_path());
  sc.robots.clear();
  const auto m = run_trial(sc, Strategy::kRne, InitialConditions{});
  EXPECT_EQ(m.ticks, 6000);
  EXPECT_EQ(m.rescued_total(), 0);
  EXPECT_EQ(m.energy_spent_total, 0.0);
  EXPECT_TRUE(m.rounds.empty());
}

TEST(RunTrial, ReplayIsBitIdentical) {
  const auto sc = load_scenario(fixtures::desk_scenario_path());
  for (Strategy s : kAllStrategies) {
    std::ostringstream t1, t2;
    const auto a = harness::run_trial(sc, s, 7, &t1);
    const auto b = harness::run_trial(sc, s, 7, &t2);
    EXPECT_EQ(harness::trial_to_json(a, s, 7).dump(), harness::trial_to_json(b, s, 7).dump());
    EXPECT_EQ(t1.str(), t2.str());
    EXPECT_EQ(a.ticks, 6000);
  }
}

TEST(RunTrial, TraceFormat) {
  auto sc = load_scenario(fixtures::desk_scenario_path());
  sc.world.mission_seconds = 0.2;
  std::ostringstream trace;
  harness::run_trial(sc, Strategy::kRne, 1, &trace);
  std::istringstream in(trace.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "tick,robot_id,x,y,hp,energy,mode");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
  }
  EXPECT_EQ(rows, 2 * 12);
}

// Conservation, drains, occupancy on the desk scenario, checked every tick.
TEST(Invariants, DeskScenarioEveryTick) {
  const auto sc = load_scenario(fixtures::desk_scenario_path());
  for (Strategy strategy : kAllStrategies) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Simulator sim(sc, strategy, harness::initials_for_seed(sc, seed));
      std::vector<RobotState> prev = sim.robots();
      int failures = 0;
      sim.set_tick_observer([&](const Simulator& s) {
        const auto& now = s.robots();
        std::set<Cell> cells;
        int carried = 0;
        for (std::size_t i = 0; i < now.size(); ++i) {
          const auto& r = now[i];
          const auto& p = prev[i];
          carried += r.carried;
          if (r.on_grid()) {
            if (!cells.insert(r.position).second) ++failures;
            if (!s.grid().passable(r.position)) ++failures;
            if (chebyshev(r.position, p.position) > 1 && p.on_grid()) ++failures;
          }
          if (r.carried > r.capacity || r.carried < 0) ++failures;
          if (r.energy < 0 || r.energy > 100 || r.hp < 0 || r.hp > 100) ++failures;
          const double de = p.energy - r.energy;
          const double dh = p.hp - r.hp;
          const bool restored_e = r.energy == 100.0 && p.mode == Mode::kResting;
          const bool restored_h = r.hp == 100.0 && p.mode == Mode::kResting;
          if (!restored_e) {
            const bool moved = r.position != p.position && p.on_grid();  // docking counts as a move
            if (moved ? de != p.energy - (p.energy - 0.0045) : de != 0.0) ++failures;
          }
          if (!restored_h) {
            const bool exposed = r.on_grid() && s.grid().radiation(r.position);
            if (exposed ? dh != p.hp - (p.hp - 0.0003) : dh != 0.0) ++failures;
          }
        }
        const auto& m = s.metrics();
        const int remaining = s.site(Difficulty::kEasy).remaining + s.site(Difficulty::kHard).remaining;
        if (m.rescued_total() + carried + remaining != m.initial_rescuees) ++failures;
        if (m.rescued_total() > m.initial_rescuees) ++failures;
        prev = now;
      });
      const auto m = sim.run();
      EXPECT_EQ(failures, 0) << to_string(strategy) << " seed " << seed;
      EXPECT_EQ(m.ticks, 6000);
      EXPECT_GT(m.rescued_total(), 0);
    }
  }
}

TEST(Invariants, ResourcesAndCapacityBalancePerRescue) {
  auto world = fixtures::small_world();
  world.sites[0].rescuees = 4;
  auto sim = fixtures::fixture_sim(world, {state("c1", Role::kCarrier, {3, 0}), state("s1", Role::kSupplier, {5, 0})});
  int last_remaining = 4;
  int failures = 0;
  sim.set_tick_observer([&](const Simulator& s) {
    const int remaining = s.site(Difficulty::kEasy).remaining;
    const int pooled = s.robots()[0].resources + s.robots()[1].resources;
    const int carried = s.robots()[0].carried + s.robots()[1].carried;
    const int rescued = 4 - remaining;
    if (remaining > last_remaining) ++failures;
    if (pooled != 11 - rescued) ++failures;
    if (carried + s.metrics().rescued_easy != rescued) ++failures;
    last_remaining = remaining;
  });
  sim.run_round(split({}, {"c1", "s1"}));
  EXPECT_EQ(failures, 0);
  EXPECT_EQ(sim.metrics().rescued_easy, 4);
}

// Two streams crossing on a corridor with side pockets every other cell. Each
// stream's leader has the farthest goal so nobody parks in front of a follower.
TEST(Liveness, CorridorCrossingKeepsEveryoneMoving) {
  WorldConfig world = fixtures::small_world(16, 6);
  world.sites[0].position = {0, 5};
  world.sites[1].position = {15, 5};
  for (int x = 0; x < 16; ++x) {
    world.sites[0].debris.push_back({x, 0});
    if (x % 2 == 1) world.sites[0].debris.push_back({x, 2});
    world.sites[0].debris.push_back({x, 3});
  }
  world.rest_position = {0, 4};
  std::vector<RobotState> robots;
  const std::vector<std::pair<Cell, Cell>> trips{{{0, 1}, {14, 1}}, {{1, 1}, {15, 1}}, {{15, 1}, {1, 1}},
                                                 {{14, 1}, {0, 1}}};
  for (std::size_t i = 0; i < trips.size(); ++i) {
    auto r = state("r" + std::to_string(i), Role::kCarrier, trips[i].first, 100, 100);
    r.base_speed = 1.0;
    r.mode = Mode::kActive;
    r.activity = Activity::kReturn;
    r.start = r.target = trips[i].second;
    r.group = 0;
    robots.push_back(r);
  }
  auto sim = fixtures::fixture_sim(world, robots);
  std::vector<long long> last_move(robots.size(), 0);
  std::vector<Cell> prev;
  for (const auto& r : sim.robots()) prev.push_back(r.position);
  long long worst_gap = 0;
  for (int t = 1; t <= 400 && !sim.all_waiting(); ++t) {
    sim.step();
    for (std::size_t i = 0; i < robots.size(); ++i) {
      const auto& r = sim.robots()[i];
      if (r.position != prev[i] || r.mode == Mode::kWaiting) last_move[i] = t;
      worst_gap = std::max(worst_gap, t - last_move[i]);
      prev[i] = r.position;
    }
  }
  EXPECT_TRUE(sim.all_waiting());
  EXPECT_LT(worst_gap, 100);
  for (const auto& r : sim.robots()) EXPECT_EQ(r.position, r.start) << r.id;
}

TEST(Performance, FullTrialUnderThirtySeconds) {
  const auto sc = load_scenario(fixtures::desk_scenario_path());
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = harness::run_trial(sc, Strategy::kRne, 42);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(m.ticks, 6000);
  EXPECT_LT(secs, 30.0);
}
