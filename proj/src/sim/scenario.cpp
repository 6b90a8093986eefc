#include "rne/sim/scenario.hpp"

#include <cmath>
#include <string>

#include "rne/errors.hpp"

namespace rne::sim {

const RoleStats& Scenario::stats(Role role) const {
  auto it = roles.find(role);
  if (it == roles.end()) throw ConfigError("no stats for role '" + std::string(to_string(role)) + "'");
  return it->second;
}

namespace {

using io::json;

void require_ratio(double lhs, double rhs, const char* relation) {
  if (std::abs(lhs - rhs) > 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
    throw ConfigError(std::string("role stats violate ") + relation);
}

std::vector<Cell> cells_from_json(const json& j) {
  std::vector<Cell> out;
  if (!j.is_array()) throw ConfigError("cell list must be an array");
  for (const auto& e : j) {
    if (e.is_object() && e.contains("rect")) {
      const auto& r = e.at("rect");
      if (!r.is_array() || r.size() != 4) throw ConfigError("rect must be [x0, y0, x1, y1]");
      const int x0 = r[0].get<int>(), y0 = r[1].get<int>(), x1 = r[2].get<int>(), y1 = r[3].get<int>();
      for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) {
        for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) out.push_back(Cell{x, y});
      }
    } else {
      out.push_back(io::cell_from_json(e));
    }
  }
  return out;
}

RoleStats role_from_json(const json& j) {
  RoleStats s;
  s.hp_scale = j.at("hp").get<double>();
  s.speed = j.at("speed").get<double>();
  s.sensing = j.at("sensing").get<double>();
  s.energy_scale = j.at("energy").get<double>();
  s.resources = j.at("resources").get<int>();
  s.capacity = j.at("capacity").get<int>();
  s.observing = j.at("observing").get<double>();
  return s;
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void validate_role_ratios(const std::map<Role, RoleStats>& roles) {
  for (Role r : kAllRoles) {
    if (!roles.contains(r))
      throw ConfigError("missing stats for role '" + std::string(to_string(r)) + "'");
  }
  const RoleStats& c = roles.at(Role::kCarrier);
  const RoleStats& s = roles.at(Role::kSupplier);
  const RoleStats& o = roles.at(Role::kObserver);
  require_ratio(s.hp_scale, c.hp_scale, "hp_s = hp_c");
  require_ratio(c.hp_scale, 2.0 * o.hp_scale, "hp_c = 2 hp_o");
  require_ratio(c.speed, s.speed, "v_c = v_s");
  require_ratio(c.speed, 1.5 * o.speed, "v_c = 1.5 v_o");
  require_ratio(o.sensing, 6.0 * c.sensing, "sen_o = 6 sen_c");
  require_ratio(o.sensing, 6.0 * s.sensing, "sen_o = 6 sen_s");
  require_ratio(s.energy_scale, c.energy_scale, "eng_s = eng_c");
  require_ratio(c.energy_scale, 1.5 * o.energy_scale, "eng_c = 1.5 eng_o");
  require_ratio(c.capacity, 6.0 * s.capacity, "cap_c = 6 cap_s");
  require_ratio(o.capacity, 0.0, "cap_o = 0");
  require_ratio(s.resources, 10.0 * c.resources, "res_s = 10 res_c");
  require_ratio(o.resources, 0.0, "res_o = 0");
  require_ratio(o.observing, 1000.0 * c.observing, "obs_o = 1000 obs_c");
  require_ratio(o.observing, 1000.0 * s.observing, "obs_o = 1000 obs_s");
  for (Role r : kAllRoles) {
    const RoleStats& st = roles.at(r);
    if (!(st.hp_scale > 0 && st.hp_scale <= 100 && st.energy_scale > 0 && st.energy_scale <= 100))
      throw ConfigError("hp and energy scales must lie in (0, 100]");
    if (st.speed <= 0 || st.speed > 1.0)
      throw ConfigError("speed must lie in (0, 1] cells per tick");
    if (st.sensing < 0 || st.observing < 0 || st.capacity < 0 || st.resources < 0)
      throw ConfigError("role stats must be non-negative");
  }
}

void validate_scenario(const Scenario& scenario) {
  validate_role_ratios(scenario.roles);
  validate_world(scenario.world, scenario.robots);
  scenario.rne.validate();
  if (scenario.weights.size() != usar::kCategories)
    throw ConfigError("needs weights must have 7 entries");
  if (scenario.trials < 1) throw ConfigError("trials must be at least 1");
  if (scenario.initials.energy_sd < 0 || scenario.initials.hp_sd < 0)
    throw ConfigError("initial standard deviations must be >= 0");
}

Scenario scenario_from_json(const json& j) {
  try {
    Scenario sc;
    WorldConfig& w = sc.world;
    const json& grid = j.at("grid");
    w.width = grid.at("width").get<int>();
    w.height = grid.at("height").get<int>();
    w.rest_position = io::cell_from_json(j.at("rest_position"));
    read_opt(j, "tick_seconds", w.tick_seconds);
    read_opt(j, "mission_seconds", w.mission_seconds);
    read_opt(j, "rest_seconds", w.rest_seconds);
    read_opt(j, "rest_threshold", w.rest_threshold);
    read_opt(j, "energy_per_step", w.energy_per_step);
    read_opt(j, "hp_per_radiation_tick", w.hp_per_radiation_tick);
    read_opt(j, "rescue_ticks", w.rescue_ticks);
    read_opt(j, "radiation_penalty", w.radiation_penalty);
    for (const auto& s : j.at("sites")) {
      SiteConfig site;
      site.name = s.value("name", std::string());
      site.position = io::cell_from_json(s.at("position"));
      site.difficulty = parse_difficulty(s.at("difficulty").get<std::string>());
      if (site.name.empty()) site.name = std::string(to_string(site.difficulty));
      site.rescuees = s.at("rescuees").get<int>();
      if (s.contains("debris")) site.debris = cells_from_json(s.at("debris"));
      if (s.contains("radiation")) site.radiation = cells_from_json(s.at("radiation"));
      w.sites.push_back(std::move(site));
    }
    for (const auto& [name, stats] : j.at("roles").items()) {
      sc.roles[parse_role(name)] = role_from_json(stats);
    }
    for (const auto& r : j.at("robots")) {
      sc.robots.push_back({r.at("id").get<std::string>(), parse_role(r.at("role").get<std::string>()),
                           io::cell_from_json(r.at("start"))});
    }
    if (j.contains("weights")) sc.weights = io::weights_from_json(j.at("weights"));
    if (j.contains("rne")) {
      const json& r = j.at("rne");
      if (r.contains("log_base")) sc.rne.log_base = parse_log_base(r.at("log_base").get<std::string>());
      read_opt(r, "epsilon", sc.rne.epsilon);
      read_opt(r, "smoothing", sc.rne.smoothing);
      read_opt(r, "sort", sc.rne.sort);
      if (r.contains("truncate") && !r.at("truncate").is_null())
        sc.rne.truncate_decimals = r.at("truncate").get<int>();
    }
    if (j.contains("initials")) {
      const json& in = j.at("initials");
      read_opt(in, "energy_mean", sc.initials.energy_mean);
      read_opt(in, "energy_sd", sc.initials.energy_sd);
      read_opt(in, "hp_mean", sc.initials.hp_mean);
      read_opt(in, "hp_sd", sc.initials.hp_sd);
    }
    if (j.contains("strategy")) sc.strategy = parse_strategy(j.at("strategy").get<std::string>());
    read_opt(j, "trials", sc.trials);
    read_opt(j, "master_seed", sc.master_seed);
    validate_scenario(sc);
    return sc;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  const io::json j = io::load_json_file(path);
  try {
    return scenario_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace rne::sim
