#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rne/grouping.hpp"
#include "rne/sim/collisions.hpp"
#include "rne/sim/scenario.hpp"
#include "rne/sim/world.hpp"

namespace rne::sim {

struct SiteState {
  Cell position;
  Difficulty difficulty = Difficulty::kEasy;
  int remaining = 0;
};

enum class RescueOutcome { kRescued, kNotAdjacent, kNoCapacity, kNoResources, kSiteEmpty };

// Sum of resources held by the group members.
int pooled_resources(std::span<RobotState* const> group);

// One rescue by `robot` at `site`: costs one capacity slot of the rescuer and
// one resource taken from the group member holding the most (ties by id).
// On refusal nothing changes.
RescueOutcome rescue(RobotState& robot, std::span<RobotState* const> group, SiteState& site);

// Deterministic single-threaded grid world for one trial.
class Simulator {
 public:
  Simulator(const Scenario& scenario, Strategy strategy, const InitialConditions& initials);

  // Fixture constructor: robots are used as given (positions, modes, paths).
  Simulator(WorldConfig world, std::map<Role, RoleStats> roles, std::vector<RobotState> robots,
            WeightVector weights, RneConfig cfg, Strategy strategy);

  // Advances one tick.
  void step();

  // Sends the groups out and steps until every robot is back at start or in
  // its rest cycle, or the mission clock runs out. All robots must be waiting.
  RoundMetrics run_round(const GroupAssignment& assignment);

  // Regroups and runs rounds until the mission clock expires.
  TrialMetrics run();

  std::vector<RobotSnapshot> snapshots() const;
  std::vector<TaskSite> task_sites() const;
  GroupAssignment regroup() const;

  bool all_waiting() const;
  bool round_active() const { return round_.has_value(); }

  const Grid& grid() const { return grid_; }
  long long tick() const { return tick_; }
  long long mission_ticks() const { return world_.mission_ticks(); }
  const std::vector<RobotState>& robots() const { return robots_; }
  RobotState& robot(std::string_view id);
  const SiteState& site(Difficulty d) const;
  const TrialMetrics& metrics() const { return metrics_; }
  const WorldConfig& world() const { return world_; }

  // Planned next cell for each robot during the last movement phase, or
  // nullopt for robots that did not try to move.
  const std::vector<std::optional<Cell>>& last_intents() const { return last_intents_; }

  // CSV trace, one line per robot per tick: tick,robot_id,x,y,hp,energy,mode.
  void set_trace(std::ostream* out);

  // Called after every tick; used by invariant checks.
  void set_tick_observer(std::function<void(const Simulator&)> observer) { observer_ = std::move(observer); }

 private:
  void init_occupancy();
  void dispatch(const GroupAssignment& assignment);
  void close_round(bool truncated);
  bool round_done() const;

  void process_rest();
  void reveal_radiation();
  std::vector<Cell> goals_for(const RobotState& r) const;
  bool wants_to_move(const RobotState& r) const;
  void ensure_path(std::size_t i);
  void movement_phase();
  void handle_arrivals();
  void rescue_phase();
  void radiation_phase();
  void threshold_phase();
  void write_trace();

  bool group_has_observer(int group) const;
  std::vector<RobotState*> group_members(int group);
  void spend_energy(RobotState& r, double amount);
  void spend_hp(RobotState& r, double amount);
  void start_return(RobotState& r);

  WorldConfig world_;
  Grid grid_;
  std::map<Role, RoleStats> roles_;
  WeightVector weights_;
  RneConfig cfg_;
  Strategy strategy_;

  std::vector<RobotState> robots_;
  std::vector<int> occupancy_;
  std::vector<SiteState> sites_;
  std::vector<Cell> radiation_cells_;
  std::vector<std::vector<std::uint8_t>> known_radiation_;  // per group, per cell
  std::vector<std::optional<Cell>> last_intents_;

  long long tick_ = 0;
  TrialMetrics metrics_;
  std::optional<RoundMetrics> round_;
  std::ostream* trace_ = nullptr;
  std::function<void(const Simulator&)> observer_;
};

TrialMetrics run_trial(const Scenario& scenario, Strategy strategy, const InitialConditions& initials,
                       std::ostream* trace = nullptr);

}  // namespace rne::sim
