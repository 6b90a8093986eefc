#pragma once

#include <string>
#include <vector>

#include "rne/sim/scenario.hpp"
#include "rne/sim/simulator.hpp"

namespace fixtures {

inline std::string desk_scenario_path() { return std::string(RNE_SCENARIO_DIR) + "/desk40.json"; }

inline std::map<rne::Role, rne::sim::RoleStats> default_roles() {
  return {{rne::Role::kCarrier, {100, 0.3, 1, 90, 1, 6, 0.02}},
          {rne::Role::kSupplier, {100, 0.3, 1, 90, 10, 1, 0.02}},
          {rne::Role::kObserver, {50, 0.2, 6, 60, 0, 0, 20}}};
}

// Small open world; easy site at (1, h-2), hard site at (w-2, h-2), rest at
// (w-1, 0).
inline rne::sim::WorldConfig small_world(int w = 12, int h = 12) {
  rne::sim::WorldConfig world;
  world.width = w;
  world.height = h;
  world.rest_position = {w - 1, 0};
  world.sites = {{"easy", {1, h - 2}, rne::Difficulty::kEasy, 0, {}, {}},
                 {"hard", {w - 2, h - 2}, rne::Difficulty::kHard, 0, {}, {}}};
  return world;
}

inline rne::sim::RobotState state(std::string id, rne::Role role, rne::Cell at, double energy = 80,
                                  double hp = 90) {
  const auto roles = default_roles();
  const auto& st = roles.at(role);
  rne::sim::RobotState r;
  r.id = std::move(id);
  r.role = role;
  r.position = r.start = r.target = at;
  r.energy = energy;
  r.hp = hp;
  r.base_speed = st.speed;
  r.sensing_range = st.sensing;
  r.observing_range = st.observing;
  r.capacity = st.capacity;
  r.resources = st.resources;
  return r;
}

inline rne::sim::Simulator fixture_sim(rne::sim::WorldConfig world, std::vector<rne::sim::RobotState> robots) {
  return rne::sim::Simulator(std::move(world), default_roles(), std::move(robots), rne::usar::default_weights(),
                             rne::RneConfig{}, rne::Strategy::kRne);
}

}  // namespace fixtures
