#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rne/geometry.hpp"
#include "rne/grouping.hpp"
#include "rne/needs.hpp"
#include "rne/trust.hpp"

namespace rne::sim {

// Full-health base stats of a role. hp_scale and energy_scale convert the
// hp / energy percentages into needs magnitudes so the inter-role ratios hold.
struct RoleStats {
  double hp_scale = 100.0;
  double speed = 0.3;  // cells per tick
  double sensing = 1.0;  // cells
  double energy_scale = 90.0;
  int resources = 1;
  int capacity = 6;
  double observing = 0.02;  // cells
};

struct SiteConfig {
  std::string name;
  Cell position;
  Difficulty difficulty = Difficulty::kEasy;
  int rescuees = 0;
  std::vector<Cell> debris;
  std::vector<Cell> radiation;
};

struct WorldConfig {
  int width = 40;
  int height = 40;
  std::vector<SiteConfig> sites;
  Cell rest_position;
  double tick_seconds = 0.1;
  double mission_seconds = 600.0;
  double rest_seconds = 30.0;
  double rest_threshold = 30.0;  // percent, energy or hp
  double energy_per_step = 0.0045;  // percentage points per moving step
  double hp_per_radiation_tick = 0.0003;  // percentage points per tick on radiation
  int rescue_ticks = 50;
  double radiation_penalty = 4.0;  // extra path cost of a known radiation cell

  long long mission_ticks() const;
  long long rest_ticks() const;
};

struct RobotSpec {
  std::string id;
  Role role = Role::kCarrier;
  Cell start;
};

struct InitialConditions {
  std::vector<double> energy;  // percent, roster order
  std::vector<double> hp;
};

enum class Mode { kActive, kToRest, kResting, kWaiting };
enum class Activity { kIdle, kToSite, kRescue, kReturn };

std::string_view to_string(Mode mode);

struct RobotState {
  std::string id;
  Role role = Role::kCarrier;
  Cell position;
  Cell start;
  double hp = 100.0;  // percent
  double energy = 100.0;  // percent
  double base_speed = 0.0;
  double sensing_range = 0.0;
  double observing_range = 0.0;
  int capacity = 0;
  int resources = 0;
  int carried = 0;
  Mode mode = Mode::kWaiting;
  int rest_ticks_left = 0;

  Activity activity = Activity::kIdle;
  int group = -1;  // index into Simulator groups, -1 before the first round
  std::optional<Difficulty> task;
  double move_credit = 0.0;
  std::vector<Cell> path;  // remaining cells, next first
  Cell target;
  bool docked = false;  // inside the rest station, off the grid
  bool rest_cycle = false;  // heading to, inside, or back from the rest station
  bool restore_hp = false;
  bool restore_energy = false;
  int rescue_progress = 0;
  int blocked_ticks = 0;
  bool replan = true;

  bool on_grid() const { return !docked; }
};

struct RoundMetrics {
  int index = 0;
  long long start_tick = 0;
  long long end_tick = 0;
  bool truncated = false;
  std::vector<std::string> hard_group;
  std::vector<std::string> easy_group;
  int rescued_easy = 0;
  int rescued_hard = 0;
  double energy_spent = 0.0;
  double hp_spent = 0.0;
};

struct SimDiagnostics {
  long long deadlocks = 0;  // collision lists where nobody moved
  long long deadlock_swaps = 0;  // order switches attempted
  long long full_rotation_stalls = 0;
  long long unreachable_targets = 0;
};

struct TrialMetrics {
  int initial_rescuees = 0;
  int rescued_easy = 0;
  int rescued_hard = 0;
  double energy_spent_easy = 0.0;
  double energy_spent_hard = 0.0;
  double energy_spent_total = 0.0;
  double hp_spent_easy = 0.0;
  double hp_spent_hard = 0.0;
  double hp_spent_total = 0.0;
  long long ticks = 0;
  std::vector<RoundMetrics> rounds;
  SimDiagnostics diagnostics;

  int rescued_total() const { return rescued_easy + rescued_hard; }
};

// Static map: debris, radiation and site cells.
class Grid {
 public:
  Grid() = default;
  explicit Grid(const WorldConfig& config);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool debris(Cell c) const { return flag(c, kDebris); }
  bool radiation(Cell c) const { return flag(c, kRadiation); }
  bool site(Cell c) const { return flag(c, kSite); }
  // Robots may stand here: inside the map, no debris, not a site pile.
  bool passable(Cell c) const { return in_bounds(c) && !flag(c, kDebris | kSite); }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }

 private:
  static constexpr std::uint8_t kDebris = 1, kRadiation = 2, kSite = 4;
  bool flag(Cell c, std::uint8_t f) const { return in_bounds(c) && (cells_[index(c)] & f) != 0; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Throws ConfigError for out-of-bounds cells, overlapping sites, robots on
// blocked cells and a hard site that is not farther, more cluttered and more
// radioactive than the easy one.
void validate_world(const WorldConfig& config, const std::vector<RobotSpec>& robots);

inline constexpr double kNoObserverSpeedFactor = 0.7;

// Speed in cells per tick after HP scaling and the missing-observer penalty.
double effective_speed(const RobotState& robot, bool group_has_observer);
double effective_sensing(const RobotState& robot);
double effective_observing(const RobotState& robot);

// Current 7-category needs of a robot under its role stats.
NeedsVector current_needs(const RobotState& robot, const RoleStats& stats);

// Collision priority key: weighted needs mass, larger first.
double priority_mass(const NeedsVector& needs, const WeightVector& weights);

}  // namespace rne::sim
