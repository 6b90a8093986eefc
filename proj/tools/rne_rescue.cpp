// rne-rescue: trust, grouping, single-trial and experiment front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rne/errors.hpp"
#include "rne/harness.hpp"
#include "rne/io.hpp"
#include "rne/log.hpp"

namespace {

using rne::io::json;

constexpr int kConfigExit = 2;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct TrustArgs {
  std::string p, q, weights, log_base = "natural";
  bool group_p = false, group_q = false, sort = false, strict = false;
  int truncate = -1;
};

int run_trust(const TrustArgs& a) {
  rne::RneConfig cfg;
  cfg.log_base = rne::parse_log_base(a.log_base);
  cfg.sort = a.sort;
  cfg.smoothing = !a.strict;
  if (a.truncate >= 0) cfg.truncate_decimals = a.truncate;
  cfg.validate();

  const auto weights = rne::io::weights_from_json(rne::io::load_json_file(a.weights));
  const json pj = rne::io::load_json_file(a.p);
  const json qj = rne::io::load_json_file(a.q);
  rne::TrustValue t;
  if (a.group_p) {
    t = rne::group_group_trust(rne::io::group_from_json(pj),
                               a.group_q ? rne::io::group_from_json(qj)
                                         : rne::GroupNeedsMatrix({rne::io::needs_from_json(qj)}),
                               weights, cfg);
  } else if (a.group_q) {
    t = rne::agent_group_trust(rne::io::needs_from_json(pj), rne::io::group_from_json(qj), weights, cfg);
  } else {
    t = rne::agent_agent_trust(rne::io::needs_from_json(pj), rne::io::needs_from_json(qj), weights, cfg);
  }
  if (t.is_infinite()) {
    std::cout << "inf\n";
  } else {
    std::printf("%.6f\n", t.value);
  }
  return 0;
}

int run_group(const std::string& roster_path, const std::string& strategy, const std::string& weights_path) {
  const auto roster = rne::io::roster_from_json(rne::io::load_json_file(roster_path));
  const auto weights = weights_path.empty()
                           ? rne::usar::default_weights()
                           : rne::io::weights_from_json(rne::io::load_json_file(weights_path));
  const auto assignment =
      rne::assign_groups(rne::parse_strategy(strategy), roster.robots, roster.tasks, weights, rne::RneConfig{});
  rne::validate_assignment(assignment, roster.robots);
  std::cout << rne::io::assignment_to_json(assignment).dump(2) << '\n';
  return 0;
}

int run_simulate(const std::string& scenario_path, const std::string& strategy_text, std::uint64_t seed,
                 const std::string& out_path, const std::string& trace_path) {
  const auto scenario = rne::sim::load_scenario(scenario_path);
  const auto strategy = strategy_text.empty() ? scenario.strategy : rne::parse_strategy(strategy_text);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw rne::ConfigError("cannot write " + trace_path);
  }
  const auto metrics = rne::harness::run_trial(scenario, strategy, seed, trace.is_open() ? &trace : nullptr);
  const std::string text = rne::harness::trial_to_json(metrics, strategy, seed).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw rne::ConfigError("cannot write " + out_path);
    out << text;
  }
  rne::log::info("rescued ", metrics.rescued_total(), " of ", metrics.initial_rescuees);
  return 0;
}

int run_experiment(const std::string& scenario_path, const std::string& strategies, int trials,
                   std::uint64_t master_seed, const std::string& out_dir) {
  rne::harness::ExperimentPlan plan;
  plan.scenario_path = scenario_path;
  plan.strategies.clear();
  for (const auto& s : split_csv(strategies)) plan.strategies.push_back(rne::parse_strategy(s));
  plan.trials = trials;
  plan.master_seed = master_seed;
  plan.out_dir = out_dir;
  const auto report = rne::harness::run_experiment(plan);
  if (out_dir.empty()) std::cout << report.summary_csv();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative needs entropy trust, grouping and rescue simulation"};
  app.require_subcommand(1);

  TrustArgs trust;
  auto* trust_cmd = app.add_subcommand("trust", "Trust from p to q");
  trust_cmd->add_option("--p", trust.p, "Trustor needs (JSON)")->required();
  trust_cmd->add_option("--q", trust.q, "Trustee needs (JSON)")->required();
  trust_cmd->add_option("--weights", trust.weights, "Weights (JSON)")->required();
  trust_cmd->add_flag("--group-p", trust.group_p, "Read p as a group");
  trust_cmd->add_flag("--group-q", trust.group_q, "Read q as a group");
  trust_cmd->add_option("--log-base", trust.log_base, "natural, 10 or 2");
  trust_cmd->add_option("--truncate", trust.truncate, "Floor distributions to N decimals");
  trust_cmd->add_flag("--sort", trust.sort, "Sort distributions descending first");
  trust_cmd->add_flag("--strict", trust.strict, "No smoothing; zero mass in q gives inf");

  std::string roster, strategy, weights;
  auto* group_cmd = app.add_subcommand("group", "Split a roster into hard and easy groups");
  group_cmd->add_option("--roster", roster, "Roster (JSON)")->required();
  group_cmd->add_option("--strategy", strategy, "rne, dis, eng or hp_dis")->required();
  group_cmd->add_option("--weights", weights, "Weights (JSON)");

  std::string scenario, sim_strategy, out, trace_out;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one seeded trial");
  sim_cmd->add_option("--scenario", scenario, "Scenario (JSON)")->required();
  sim_cmd->add_option("--strategy", sim_strategy, "Defaults to the scenario's strategy");
  sim_cmd->add_option("--seed", seed, "Initial condition seed")->required();
  sim_cmd->add_option("--out", out, "Trial metrics (JSON); stdout when absent");
  sim_cmd->add_option("--trace", trace_out, "Per-tick CSV trace");

  std::string exp_scenario, exp_strategies = "rne,dis,eng,hp_dis", out_dir;
  int trials = 10;
  std::uint64_t master_seed = 42;
  auto* exp_cmd = app.add_subcommand("experiment", "Every strategy on shared initial conditions");
  exp_cmd->add_option("--scenario", exp_scenario, "Scenario (JSON)")->required();
  exp_cmd->add_option("--strategies", exp_strategies, "Comma separated");
  exp_cmd->add_option("--trials", trials, "Trials per strategy");
  exp_cmd->add_option("--master-seed", master_seed, "Seed of the initial condition draws");
  exp_cmd->add_option("--out-dir", out_dir, "Directory for trials.csv, summary.csv, report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*trust_cmd) return run_trust(trust);
    if (*group_cmd) return run_group(roster, strategy, weights);
    if (*sim_cmd) return run_simulate(scenario, sim_strategy, seed, out, trace_out);
    if (*exp_cmd) return run_experiment(exp_scenario, exp_strategies, trials, master_seed, out_dir);
  } catch (const rne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const rne::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
