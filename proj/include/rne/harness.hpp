#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rne/io.hpp"
#include "rne/sim/scenario.hpp"
#include "rne/sim/simulator.hpp"

namespace rne::harness {

// One set of initial conditions per trial index, shared by every strategy.
struct InitialConditionSet {
  std::vector<sim::InitialConditions> trials;
};

// Energy and hp drawn per robot, per trial, from one engine seeded with
// `master_seed`. Non-positive draws are redrawn; values above 100 clamp to 100.
InitialConditionSet sample_initials(std::uint64_t master_seed, const std::vector<sim::RobotSpec>& roster,
                                    int trials, const sim::InitialSampling& sampling = {});

// Hash of the layout, roster and initial conditions a trial starts from.
std::uint64_t initial_state_hash(const sim::Scenario& scenario, const sim::InitialConditions& initials);

enum class Task { kEasy, kHard, kTotal };
std::string_view to_string(Task task);
inline constexpr std::array<Task, 3> kAllTasks{Task::kEasy, Task::kHard, Task::kTotal};

struct CostRow {
  Task task = Task::kTotal;
  int rescued = 0;
  double energy_spent = 0.0;
  double hp_spent = 0.0;
  std::optional<double> energy_per_rescuee;  // absent when nothing was rescued
  std::optional<double> hp_per_rescuee;
};

// Rows for easy, hard and total, in that order.
std::vector<CostRow> compute_costs(const sim::TrialMetrics& metrics);

// The initial conditions of a single seeded trial.
sim::InitialConditions initials_for_seed(const sim::Scenario& scenario, std::uint64_t seed);

sim::TrialMetrics run_trial(const sim::Scenario& scenario, Strategy strategy, std::uint64_t seed,
                            std::ostream* trace = nullptr);

io::json trial_to_json(const sim::TrialMetrics& metrics, Strategy strategy, std::uint64_t seed);

struct ExperimentPlan {
  std::filesystem::path scenario_path;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  int trials = 10;
  std::uint64_t master_seed = 42;
  std::filesystem::path out_dir;  // empty: nothing written

  void validate() const;
};

struct TrialRow {
  Strategy strategy = Strategy::kRne;
  int trial = 0;
  std::uint64_t initial_hash = 0;
  sim::TrialMetrics metrics;
  std::vector<CostRow> costs;
};

enum class Metric { kRescued, kEnergyPerRescuee, kHpPerRescuee };
std::string_view to_string(Metric metric);
inline constexpr std::array<Metric, 3> kAllMetrics{Metric::kRescued, Metric::kEnergyPerRescuee,
                                                   Metric::kHpPerRescuee};

// Mean and sample standard deviation over the trials where the value exists.
struct SummaryRow {
  Strategy strategy = Strategy::kRne;
  Task task = Task::kTotal;
  Metric metric = Metric::kRescued;
  int n = 0;
  std::optional<double> mean;
  std::optional<double> sd;  // 0 for a single trial
};

struct ExperimentReport {
  std::vector<TrialRow> trials;  // ordered by (strategy, trial)
  std::vector<SummaryRow> summary;  // ordered by (task, metric, strategy)

  std::string trials_csv() const;
  std::string summary_csv() const;
  io::json to_json() const;
};

std::optional<double> metric_value(const TrialRow& row, Task task, Metric metric);
std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows, const std::vector<Strategy>& strategies);

// Runs every strategy on every trial's initial conditions. When out_dir is
// set, writes trials.csv, summary.csv and report.json there.
ExperimentReport run_experiment(const ExperimentPlan& plan);
ExperimentReport run_experiment(const ExperimentPlan& plan, const sim::Scenario& scenario);

}  // namespace rne::harness
