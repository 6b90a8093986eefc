#include "rne/sim/world.hpp"

#include <cmath>
#include <set>

#include "rne/errors.hpp"

namespace rne::sim {

long long WorldConfig::mission_ticks() const {
  return std::llround(mission_seconds / tick_seconds);
}

long long WorldConfig::rest_ticks() const { return std::llround(rest_seconds / tick_seconds); }

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kActive: return "active";
    case Mode::kToRest: return "to_rest";
    case Mode::kResting: return "resting";
    case Mode::kWaiting: return "waiting";
  }
  return "waiting";
}

Grid::Grid(const WorldConfig& config)
    : width_(config.width),
      height_(config.height),
      cells_(static_cast<std::size_t>(config.width) * config.height, 0) {
  for (const auto& site : config.sites) {
    for (Cell c : site.debris) {
      if (in_bounds(c)) cells_[index(c)] |= kDebris;
    }
    for (Cell c : site.radiation) {
      if (in_bounds(c)) cells_[index(c)] |= kRadiation;
    }
    if (in_bounds(site.position)) cells_[index(site.position)] |= kSite;
  }
}

void validate_world(const WorldConfig& config, const std::vector<RobotSpec>& robots) {
  if (config.width <= 0 || config.height <= 0) throw ConfigError("grid must be non-empty");
  if (!(config.tick_seconds > 0.0)) throw ConfigError("tick_seconds must be positive");
  if (config.mission_seconds < 0.0) throw ConfigError("mission_seconds must be >= 0");
  if (config.rescue_ticks < 1) throw ConfigError("rescue_ticks must be at least 1");
  if (config.sites.size() != 2) throw ConfigError("exactly two task sites are required");

  const Grid grid(config);
  auto in = [&](Cell c, const std::string& what) {
    if (!grid.in_bounds(c))
      throw ConfigError(what + " (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                        ") lies outside the grid");
  };

  const SiteConfig* easy = nullptr;
  const SiteConfig* hard = nullptr;
  for (const auto& s : config.sites) {
    in(s.position, "site '" + s.name + "'");
    for (Cell c : s.debris) in(c, "debris of '" + s.name + "'");
    for (Cell c : s.radiation) in(c, "radiation of '" + s.name + "'");
    if (s.rescuees < 0) throw ConfigError("site '" + s.name + "' has negative rescuees");
    if (grid.debris(s.position)) throw ConfigError("site '" + s.name + "' sits on debris");
    (s.difficulty == Difficulty::kHard ? hard : easy) = &s;
  }
  if (!easy || !hard) throw ConfigError("task sites must be one easy and one hard");
  if (easy->position == hard->position) throw ConfigError("task sites overlap");
  if (hard->debris.size() <= easy->debris.size() || hard->radiation.size() <= easy->radiation.size())
    throw ConfigError("hard site needs strictly more debris and radiation than the easy site");

  in(config.rest_position, "rest position");
  if (!grid.passable(config.rest_position)) throw ConfigError("rest position is blocked");

  std::set<Cell> starts;
  std::set<std::string> ids;
  double to_easy = 0.0, to_hard = 0.0;
  for (const auto& r : robots) {
    in(r.start, "start of '" + r.id + "'");
    if (!grid.passable(r.start)) throw ConfigError("start of '" + r.id + "' is blocked");
    if (!starts.insert(r.start).second) throw ConfigError("robots share a start cell");
    if (!ids.insert(r.id).second) throw ConfigError("duplicate robot id '" + r.id + "'");
    if (r.start == config.rest_position) throw ConfigError("a start cell is the rest position");
    to_easy += euclidean(r.start, easy->position);
    to_hard += euclidean(r.start, hard->position);
  }
  if (!robots.empty() && !(to_hard > to_easy))
    throw ConfigError("hard site must be farther from the start area than the easy site");
}

double effective_speed(const RobotState& robot, bool group_has_observer) {
  return robot.base_speed * (robot.hp / 100.0) * (group_has_observer ? 1.0 : kNoObserverSpeedFactor);
}

double effective_sensing(const RobotState& robot) { return robot.sensing_range * robot.hp / 100.0; }

double effective_observing(const RobotState& robot) {
  return robot.observing_range * robot.hp / 100.0;
}

NeedsVector current_needs(const RobotState& robot, const RoleStats& stats) {
  const double health = robot.hp / 100.0;
  return NeedsVector({stats.hp_scale * health, robot.base_speed * health,
                      robot.sensing_range * health, stats.energy_scale * robot.energy / 100.0,
                      static_cast<double>(robot.resources),
                      static_cast<double>(robot.capacity - robot.carried),
                      robot.observing_range * health},
                     usar::labels());
}

double priority_mass(const NeedsVector& needs, const WeightVector& weights) {
  double mass = 0.0;
  for (std::size_t k = 0; k < needs.size() && k < weights.size(); ++k) mass += needs[k] * weights[k];
  return mass;
}

}  // namespace rne::sim
