#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "rne/io.hpp"
#include "rne/sim/world.hpp"

namespace rne::sim {

// Gaussian initial energy / hp percentages.
struct InitialSampling {
  double energy_mean = 80.0;
  double energy_sd = 20.0;
  double hp_mean = 90.0;
  double hp_sd = 10.0;
};

struct Scenario {
  WorldConfig world;
  std::map<Role, RoleStats> roles;
  std::vector<RobotSpec> robots;
  WeightVector weights = usar::default_weights();
  RneConfig rne;
  InitialSampling initials;
  Strategy strategy = Strategy::kRne;
  int trials = 10;
  std::uint64_t master_seed = 42;

  const RoleStats& stats(Role role) const;
};

// hp_s = hp_c = 2 hp_o; v_c = v_s = 1.5 v_o; sen_o = 6 sen_c = 6 sen_s;
// eng_s = eng_c = 1.5 eng_o; cap_c = 6 cap_s, cap_o = 0; res_s = 10 res_c,
// res_o = 0; obs_o = 1000 obs_c = 1000 obs_s. Throws ConfigError naming the
// first violated relation.
void validate_role_ratios(const std::map<Role, RoleStats>& roles);

void validate_scenario(const Scenario& scenario);

Scenario scenario_from_json(const io::json& j);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace rne::sim
