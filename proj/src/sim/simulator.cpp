#include "rne/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <unordered_map>

#include "rne/errors.hpp"
#include "rne/sim/pathing.hpp"

namespace rne::sim {

int pooled_resources(std::span<RobotState* const> group) {
  int total = 0;
  for (const RobotState* r : group) total += r->resources;
  return total;
}

RescueOutcome rescue(RobotState& robot, std::span<RobotState* const> group, SiteState& site) {
  if (chebyshev(robot.position, site.position) > 1) return RescueOutcome::kNotAdjacent;
  if (site.remaining <= 0) return RescueOutcome::kSiteEmpty;
  if (robot.carried >= robot.capacity) return RescueOutcome::kNoCapacity;
  RobotState* holder = nullptr;
  for (RobotState* r : group) {
    if (r->resources <= 0) continue;
    if (!holder || r->resources > holder->resources ||
        (r->resources == holder->resources && r->id < holder->id)) {
      holder = r;
    }
  }
  if (!holder) return RescueOutcome::kNoResources;
  --holder->resources;
  ++robot.carried;
  --site.remaining;
  return RescueOutcome::kRescued;
}

namespace {

RobotState make_robot(const RobotSpec& spec, const RoleStats& stats, double energy, double hp) {
  RobotState r;
  r.id = spec.id;
  r.role = spec.role;
  r.position = spec.start;
  r.start = spec.start;
  r.target = spec.start;
  r.hp = hp;
  r.energy = energy;
  r.base_speed = stats.speed;
  r.sensing_range = stats.sensing;
  r.observing_range = stats.observing;
  r.capacity = stats.capacity;
  r.resources = stats.resources;
  r.mode = Mode::kWaiting;
  return r;
}

}  // namespace

Simulator::Simulator(const Scenario& scenario, Strategy strategy, const InitialConditions& initials)
    : world_(scenario.world),
      grid_(scenario.world),
      roles_(scenario.roles),
      weights_(scenario.weights),
      cfg_(scenario.rne),
      strategy_(strategy) {
  validate_scenario(scenario);
  if (initials.energy.size() != scenario.robots.size() || initials.hp.size() != scenario.robots.size())
    throw ConfigError("initial conditions do not match the roster size");
  for (std::size_t i = 0; i < scenario.robots.size(); ++i) {
    const auto& spec = scenario.robots[i];
    robots_.push_back(make_robot(spec, scenario.stats(spec.role), initials.energy[i], initials.hp[i]));
  }
  for (const auto& s : world_.sites) {
    sites_.push_back({s.position, s.difficulty, s.rescuees});
    metrics_.initial_rescuees += s.rescuees;
  }
  init_occupancy();
}

Simulator::Simulator(WorldConfig world, std::map<Role, RoleStats> roles, std::vector<RobotState> robots,
                     WeightVector weights, RneConfig cfg, Strategy strategy)
    : world_(std::move(world)),
      grid_(world_),
      roles_(std::move(roles)),
      weights_(std::move(weights)),
      cfg_(cfg),
      strategy_(strategy),
      robots_(std::move(robots)) {
  for (const auto& s : world_.sites) {
    sites_.push_back({s.position, s.difficulty, s.rescuees});
    metrics_.initial_rescuees += s.rescuees;
  }
  init_occupancy();
}

void Simulator::init_occupancy() {
  occupancy_.assign(static_cast<std::size_t>(grid_.width()) * grid_.height(), -1);
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    const RobotState& r = robots_[i];
    if (!r.on_grid()) continue;
    if (!grid_.passable(r.position)) throw ConfigError("robot '" + r.id + "' starts on a blocked cell");
    int& slot = occupancy_[grid_.index(r.position)];
    if (slot >= 0) throw ConfigError("robots '" + r.id + "' and '" + robots_[slot].id + "' share a cell");
    slot = static_cast<int>(i);
  }
  for (const auto& s : world_.sites) {
    for (Cell c : s.radiation) radiation_cells_.push_back(c);
  }
  std::sort(radiation_cells_.begin(), radiation_cells_.end());
  radiation_cells_.erase(std::unique(radiation_cells_.begin(), radiation_cells_.end()),
                         radiation_cells_.end());
  known_radiation_.assign(std::max<std::size_t>(sites_.size(), 1),
                          std::vector<std::uint8_t>(occupancy_.size(), 0));
  last_intents_.assign(robots_.size(), std::nullopt);
}

RobotState& Simulator::robot(std::string_view id) {
  for (auto& r : robots_) {
    if (r.id == id) return r;
  }
  throw ConfigError("no robot '" + std::string(id) + "'");
}

const SiteState& Simulator::site(Difficulty d) const {
  for (const auto& s : sites_) {
    if (s.difficulty == d) return s;
  }
  throw ConfigError("no site of that difficulty");
}

void Simulator::set_trace(std::ostream* out) {
  trace_ = out;
  if (trace_) *trace_ << "tick,robot_id,x,y,hp,energy,mode\n";
}

std::vector<RobotSnapshot> Simulator::snapshots() const {
  std::vector<RobotSnapshot> out;
  out.reserve(robots_.size());
  for (const auto& r : robots_) {
    auto it = roles_.find(r.role);
    if (it == roles_.end()) throw ConfigError("no stats for role of '" + r.id + "'");
    out.push_back({r.id, r.role, current_needs(r, it->second), r.position});
  }
  return out;
}

std::vector<TaskSite> Simulator::task_sites() const {
  std::vector<TaskSite> out;
  for (const auto& s : sites_) out.push_back({s.position, s.difficulty});
  return out;
}

GroupAssignment Simulator::regroup() const {
  const auto snaps = snapshots();
  const auto tasks = task_sites();
  GroupAssignment a = assign_groups(strategy_, snaps, tasks, weights_, cfg_);
  validate_assignment(a, snaps);
  return a;
}

bool Simulator::all_waiting() const {
  return std::all_of(robots_.begin(), robots_.end(),
                     [](const RobotState& r) { return r.mode == Mode::kWaiting; });
}

bool Simulator::round_done() const {
  return std::all_of(robots_.begin(), robots_.end(), [](const RobotState& r) {
    return r.mode == Mode::kWaiting || r.rest_cycle;
  });
}

bool Simulator::group_has_observer(int group) const {
  if (group < 0) return true;
  return std::any_of(robots_.begin(), robots_.end(), [group](const RobotState& r) {
    return r.group == group && r.role == Role::kObserver && r.mode == Mode::kActive && !r.rest_cycle;
  });
}

std::vector<RobotState*> Simulator::group_members(int group) {
  std::vector<RobotState*> out;
  for (auto& r : robots_) {
    if (r.group == group) out.push_back(&r);
  }
  return out;
}

void Simulator::spend_energy(RobotState& r, double amount) {
  const double before = r.energy;
  r.energy = std::max(0.0, r.energy - amount);
  const double spent = before - r.energy;
  metrics_.energy_spent_total += spent;
  if (r.task == Difficulty::kEasy) metrics_.energy_spent_easy += spent;
  if (r.task == Difficulty::kHard) metrics_.energy_spent_hard += spent;
  if (round_) round_->energy_spent += spent;
}

void Simulator::spend_hp(RobotState& r, double amount) {
  const double before = r.hp;
  r.hp = std::max(0.0, r.hp - amount);
  const double spent = before - r.hp;
  metrics_.hp_spent_total += spent;
  if (r.task == Difficulty::kEasy) metrics_.hp_spent_easy += spent;
  if (r.task == Difficulty::kHard) metrics_.hp_spent_hard += spent;
  if (round_) round_->hp_spent += spent;
}

void Simulator::start_return(RobotState& r) {
  r.activity = Activity::kReturn;
  r.target = r.start;
  r.rescue_progress = 0;
  r.replan = true;
}

void Simulator::dispatch(const GroupAssignment& assignment) {
  if (!all_waiting()) throw ConfigError("a round can only start with every robot waiting at start");
  std::unordered_map<std::string, Difficulty> task_of;
  for (const auto& id : assignment.hard_group) task_of[id] = Difficulty::kHard;
  for (const auto& id : assignment.easy_group) task_of[id] = Difficulty::kEasy;
  for (auto& k : known_radiation_) std::fill(k.begin(), k.end(), 0);

  RoundMetrics round;
  round.index = static_cast<int>(metrics_.rounds.size());
  round.start_tick = tick_;
  round.hard_group = assignment.hard_group;
  round.easy_group = assignment.easy_group;
  round_ = round;

  for (auto& r : robots_) {
    auto it = task_of.find(r.id);
    if (it == task_of.end()) throw PartitionError("robot '" + r.id + "' missing from the assignment");
    r.task = it->second;
    r.group = -1;
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      if (sites_[s].difficulty == it->second) r.group = static_cast<int>(s);
    }
    r.resources = roles_.at(r.role).resources;
    r.mode = Mode::kActive;
    r.activity = Activity::kToSite;
    r.target = sites_[static_cast<std::size_t>(r.group)].position;
    r.move_credit = 0.0;
    r.rescue_progress = 0;
    r.blocked_ticks = 0;
    r.replan = true;
    r.path.clear();
  }
}

void Simulator::close_round(bool truncated) {
  if (!round_) return;
  round_->end_tick = tick_;
  round_->truncated = truncated;
  metrics_.rounds.push_back(*round_);
  round_.reset();
}

void Simulator::process_rest() {
  const Cell rest = world_.rest_position;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    RobotState& r = robots_[i];
    if (r.mode != Mode::kResting) continue;
    if (r.rest_ticks_left > 0) {
      --r.rest_ticks_left;
      if (r.rest_ticks_left == 0) {
        if (r.restore_hp) r.hp = 100.0;
        if (r.restore_energy) r.energy = 100.0;
        r.restore_hp = r.restore_energy = false;
      }
    }
    if (r.rest_ticks_left == 0 && occupancy_[grid_.index(rest)] < 0) {
      r.docked = false;
      r.position = rest;
      occupancy_[grid_.index(rest)] = static_cast<int>(i);
      r.mode = Mode::kActive;
      start_return(r);
    }
  }
}

void Simulator::reveal_radiation() {
  for (auto& r : robots_) {
    if (!r.on_grid() || r.group < 0 || r.mode == Mode::kWaiting) continue;
    const double range = effective_sensing(r);
    auto& known = known_radiation_[static_cast<std::size_t>(r.group)];
    bool learned = false;
    for (Cell c : radiation_cells_) {
      const std::size_t idx = grid_.index(c);
      if (known[idx] || chebyshev(c, r.position) > range) continue;
      known[idx] = 1;
      learned = true;
    }
    if (!learned) continue;
    // Anyone in the group whose remaining path crosses a newly known cell
    // plans again.
    for (auto& other : robots_) {
      if (other.group != r.group) continue;
      for (Cell c : other.path) {
        if (known[grid_.index(c)] && grid_.radiation(c)) {
          other.replan = true;
          break;
        }
      }
    }
  }
}

std::vector<Cell> Simulator::goals_for(const RobotState& r) const {
  if (r.mode == Mode::kToRest) return {world_.rest_position};
  if (r.activity == Activity::kReturn) return {r.start};
  if (r.activity == Activity::kToSite) {
    std::vector<Cell> goals;
    const Cell s = r.target;
    for (Cell d : kNeighbourSteps) {
      const Cell c{s.x + d.x, s.y + d.y};
      if (grid_.passable(c)) goals.push_back(c);
    }
    return goals;
  }
  return {};
}

bool Simulator::wants_to_move(const RobotState& r) const {
  if (!r.on_grid()) return false;
  if (r.mode == Mode::kToRest) return true;
  return r.mode == Mode::kActive &&
         (r.activity == Activity::kToSite || r.activity == Activity::kReturn);
}

void Simulator::ensure_path(std::size_t i) {
  RobotState& r = robots_[i];
  const bool stale = r.path.empty() || chebyshev(r.path.front(), r.position) != 1;
  if (!r.replan && !stale) return;
  r.replan = false;

  const auto goals = goals_for(r);
  PathQuery q{r.position, goals, {}, {}};
  if (r.group >= 0) {
    const auto& known = known_radiation_[static_cast<std::size_t>(r.group)];
    const double penalty = world_.radiation_penalty;
    q.extra_cost = [&known, penalty, this](Cell c) {
      return known[grid_.index(c)] ? penalty : 0.0;
    };
  }
  if (r.blocked_ticks > 0) {
    // Route around robots parked nearby; fall back to the plain route if
    // they wall the goal off.
    auto around = q;
    around.blocked = [this, &r](Cell c) {
      return chebyshev(c, r.position) <= 2 && occupancy_[grid_.index(c)] >= 0;
    };
    if (auto p = plan_path(grid_, around)) {
      r.path = std::move(*p);
      return;
    }
  }
  if (auto p = plan_path(grid_, q)) {
    r.path = std::move(*p);
  } else {
    r.path.clear();
    ++metrics_.diagnostics.unreachable_targets;
  }
}

void Simulator::movement_phase() {
  const std::size_t n = robots_.size();
  std::vector<Cell> desired(n), goals(n), positions(n);
  std::vector<double> priority(n, 0.0);
  std::vector<std::string> ids(n);
  std::vector<std::size_t> movers;
  std::fill(last_intents_.begin(), last_intents_.end(), std::nullopt);

  for (std::size_t i = 0; i < n; ++i) {
    RobotState& r = robots_[i];
    positions[i] = r.position;
    desired[i] = r.position;
    goals[i] = r.target;
    ids[i] = r.id;
    if (!wants_to_move(r)) continue;
    r.move_credit = std::min(1.0, r.move_credit + effective_speed(r, group_has_observer(r.group)));
    if (r.move_credit < 1.0) continue;
    ensure_path(i);
    if (r.path.empty()) continue;
    desired[i] = r.path.front();
    goals[i] = r.mode == Mode::kToRest ? world_.rest_position : r.target;
    last_intents_[i] = desired[i];
    auto it = roles_.find(r.role);
    priority[i] = it == roles_.end() ? 0.0 : priority_mass(current_needs(r, it->second), weights_);
    movers.push_back(i);
  }
  if (movers.empty()) return;

  // Conflict components: shared planned cell, or a planned cell held by
  // another mover.
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> is_mover(n, false);
  for (std::size_t m : movers) is_mover[m] = true;
  for (std::size_t a = 0; a < movers.size(); ++a) {
    for (std::size_t b = a + 1; b < movers.size(); ++b) {
      const std::size_t x = movers[a], y = movers[b];
      if (desired[x] == desired[y] || desired[x] == positions[y] || desired[y] == positions[x])
        parent[find(x)] = find(y);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t m : movers) components[find(m)].push_back(m);

  std::vector<CollisionList> lists;
  for (auto& [root, members] : components) lists.push_back(make_collision_list(members, priority, ids));
  std::sort(lists.begin(), lists.end(), [&](const CollisionList& a, const CollisionList& b) {
    const std::size_t ha = a.order.front(), hb = b.order.front();
    if (priority[ha] != priority[hb]) return priority[ha] > priority[hb];
    return ids[ha] < ids[hb];
  });

  Arena arena{grid_, positions, occupancy_, desired, goals};
  std::vector<bool> moved(n, false);
  for (const auto& list : lists) {
    auto moves = avoid_collisions(list, arena);
    if (moves.empty() && list.order.size() > 1) {
      ++metrics_.diagnostics.deadlocks;
      moves = resolve_deadlock(list, arena, &metrics_.diagnostics);
    }
    for (const Move& mv : moves) {
      RobotState& r = robots_[mv.robot];
      moved[mv.robot] = true;
      r.position = mv.to;
      r.move_credit -= 1.0;
      r.blocked_ticks = 0;
      if (mv.sidestep) {
        r.replan = true;
        r.path.clear();
      } else if (!r.path.empty()) {
        r.path.erase(r.path.begin());
      }
      spend_energy(r, world_.energy_per_step);
    }
  }
  for (std::size_t m : movers) {
    if (!moved[m]) {
      ++robots_[m].blocked_ticks;
      robots_[m].replan = true;
    }
  }
}

void Simulator::handle_arrivals() {
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    RobotState& r = robots_[i];
    if (!r.on_grid()) continue;
    if (r.mode == Mode::kToRest) {
      if (r.position == world_.rest_position) {
        occupancy_[grid_.index(r.position)] = -1;
        r.docked = true;
        r.mode = Mode::kResting;
        r.rest_ticks_left = static_cast<int>(world_.rest_ticks());
        r.path.clear();
        r.move_credit = 0.0;
      }
      continue;
    }
    if (r.mode != Mode::kActive) continue;
    if (r.activity == Activity::kToSite && chebyshev(r.position, r.target) <= 1) {
      r.activity = Activity::kRescue;
      r.rescue_progress = 0;
      r.path.clear();
      r.move_credit = 0.0;
    } else if (r.activity == Activity::kReturn && r.position == r.start) {
      if (r.carried > 0) {
        if (r.task == Difficulty::kEasy) {
          metrics_.rescued_easy += r.carried;
          if (round_) round_->rescued_easy += r.carried;
        } else if (r.task == Difficulty::kHard) {
          metrics_.rescued_hard += r.carried;
          if (round_) round_->rescued_hard += r.carried;
        }
        r.carried = 0;
      }
      r.mode = Mode::kWaiting;
      r.activity = Activity::kIdle;
      r.rest_cycle = false;
      r.path.clear();
      r.move_credit = 0.0;
    }
  }
}

void Simulator::rescue_phase() {
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    const int g = static_cast<int>(s);
    auto members = group_members(g);
    SiteState& site = sites_[s];
    const auto workers_busy = [&] {
      return std::any_of(members.begin(), members.end(), [](const RobotState* m) {
        return m->role != Role::kObserver && m->mode == Mode::kActive &&
               (m->activity == Activity::kToSite || m->activity == Activity::kRescue);
      });
    };
    for (RobotState* r : members) {
      if (r->mode != Mode::kActive) continue;
      if (r->role == Role::kObserver) continue;
      if (r->activity != Activity::kToSite && r->activity != Activity::kRescue) continue;
      const bool can_work = site.remaining > 0 && r->carried < r->capacity &&
                            pooled_resources(members) > 0;
      if (!can_work) {
        start_return(*r);
        continue;
      }
      if (r->activity != Activity::kRescue) continue;
      if (++r->rescue_progress < world_.rescue_ticks) continue;
      r->rescue_progress = 0;
      rescue(*r, members, site);
      if (site.remaining <= 0 || r->carried >= r->capacity || pooled_resources(members) <= 0)
        start_return(*r);
    }
    // Observers stay with the site until the workers are done.
    if (!workers_busy()) {
      for (RobotState* r : members) {
        if (r->role == Role::kObserver && r->mode == Mode::kActive &&
            (r->activity == Activity::kToSite || r->activity == Activity::kRescue))
          start_return(*r);
      }
    }
  }
}

void Simulator::radiation_phase() {
  for (auto& r : robots_) {
    if (r.on_grid() && grid_.radiation(r.position)) spend_hp(r, world_.hp_per_radiation_tick);
  }
}

void Simulator::threshold_phase() {
  for (auto& r : robots_) {
    if (r.rest_cycle || !r.on_grid()) continue;
    const bool low_energy = r.energy < world_.rest_threshold;
    const bool low_hp = r.hp < world_.rest_threshold;
    if (!low_energy && !low_hp) continue;
    r.mode = Mode::kToRest;
    r.activity = Activity::kIdle;
    r.rest_cycle = true;
    r.restore_energy = low_energy;
    r.restore_hp = low_hp;
    r.rescue_progress = 0;
    r.target = world_.rest_position;
    r.replan = true;
    r.path.clear();
  }
}

void Simulator::write_trace() {
  if (!trace_) return;
  std::ostream& out = *trace_;
  for (const auto& r : robots_) {
    out << tick_ << ',' << r.id << ',' << r.position.x << ',' << r.position.y << ',' << std::fixed
        << std::setprecision(6) << r.hp << ',' << r.energy << ',' << to_string(r.mode) << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void Simulator::step() {
  process_rest();
  reveal_radiation();
  movement_phase();
  handle_arrivals();
  rescue_phase();
  radiation_phase();
  threshold_phase();
  ++tick_;
  metrics_.ticks = tick_;
  write_trace();
  if (observer_) observer_(*this);
}

RoundMetrics Simulator::run_round(const GroupAssignment& assignment) {
  dispatch(assignment);
  do {
    step();
  } while (!round_done() && tick_ < mission_ticks());
  const bool truncated = !round_done();
  close_round(truncated);
  return metrics_.rounds.back();
}

TrialMetrics Simulator::run() {
  const long long end = mission_ticks();
  while (tick_ < end) {
    const bool work_left = std::any_of(sites_.begin(), sites_.end(),
                                       [](const SiteState& s) { return s.remaining > 0; });
    if (!robots_.empty() && work_left && all_waiting()) {
      run_round(regroup());
    } else {
      step();
    }
  }
  metrics_.ticks = tick_;
  return metrics_;
}

TrialMetrics run_trial(const Scenario& scenario, Strategy strategy, const InitialConditions& initials,
                       std::ostream* trace) {
  Simulator sim(scenario, strategy, initials);
  sim.set_trace(trace);
  return sim.run();
}

}  // namespace rne::sim
