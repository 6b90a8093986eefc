#include "rne/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "rne/errors.hpp"
#include "rne/log.hpp"

namespace rne::harness {

namespace {

double draw_percent(std::mt19937_64& rng, double mean, double sd) {
  if (sd == 0.0) return std::clamp(mean, 1e-9, 100.0);
  std::normal_distribution<double> dist(mean, sd);
  double v = dist(rng);
  while (v <= 0.0) v = dist(rng);
  return std::min(v, 100.0);
}

// FNV-1a, 64 bit.
class Hasher {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void i64(long long v) { bytes(&v, sizeof v); }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    bytes(&bits, sizeof bits);
  }
  void str(std::string_view s) {
    i64(static_cast<long long>(s.size()));
    bytes(s.data(), s.size());
  }
  void cell(Cell c) {
    i64(c.x);
    i64(c.y);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

io::json opt_json(const std::optional<double>& v) { return v ? io::json(*v) : io::json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace

InitialConditionSet sample_initials(std::uint64_t master_seed, const std::vector<sim::RobotSpec>& roster,
                                    int trials, const sim::InitialSampling& sampling) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (sampling.energy_sd < 0.0 || sampling.hp_sd < 0.0)
    throw ConfigError("initial standard deviations must be non-negative");
  std::mt19937_64 rng(master_seed);
  InitialConditionSet set;
  set.trials.resize(static_cast<std::size_t>(trials));
  for (auto& t : set.trials) {
    for (std::size_t i = 0; i < roster.size(); ++i) {
      t.energy.push_back(draw_percent(rng, sampling.energy_mean, sampling.energy_sd));
      t.hp.push_back(draw_percent(rng, sampling.hp_mean, sampling.hp_sd));
    }
  }
  return set;
}

std::uint64_t initial_state_hash(const sim::Scenario& scenario, const sim::InitialConditions& initials) {
  Hasher h;
  const auto& w = scenario.world;
  h.i64(w.width);
  h.i64(w.height);
  h.cell(w.rest_position);
  for (const auto& s : w.sites) {
    h.str(s.name);
    h.cell(s.position);
    h.i64(static_cast<int>(s.difficulty));
    h.i64(s.rescuees);
    for (Cell c : s.debris) h.cell(c);
    h.i64(-1);
    for (Cell c : s.radiation) h.cell(c);
    h.i64(-1);
  }
  for (const auto& r : scenario.robots) {
    h.str(r.id);
    h.i64(static_cast<int>(r.role));
    h.cell(r.start);
  }
  for (double v : initials.energy) h.f64(v);
  for (double v : initials.hp) h.f64(v);
  return h.value();
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kEasy: return "easy";
    case Task::kHard: return "hard";
    case Task::kTotal: return "total";
  }
  return "?";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kRescued: return "rescued";
    case Metric::kEnergyPerRescuee: return "energy_per_rescuee";
    case Metric::kHpPerRescuee: return "hp_per_rescuee";
  }
  return "?";
}

std::vector<CostRow> compute_costs(const sim::TrialMetrics& m) {
  auto row = [](Task task, int rescued, double energy, double hp) {
    CostRow r{task, rescued, energy, hp, std::nullopt, std::nullopt};
    if (rescued > 0) {
      r.energy_per_rescuee = energy / rescued;
      r.hp_per_rescuee = hp / rescued;
    }
    return r;
  };
  return {row(Task::kEasy, m.rescued_easy, m.energy_spent_easy, m.hp_spent_easy),
          row(Task::kHard, m.rescued_hard, m.energy_spent_hard, m.hp_spent_hard),
          row(Task::kTotal, m.rescued_total(), m.energy_spent_total, m.hp_spent_total)};
}

sim::InitialConditions initials_for_seed(const sim::Scenario& scenario, std::uint64_t seed) {
  return sample_initials(seed, scenario.robots, 1, scenario.initials).trials.front();
}

sim::TrialMetrics run_trial(const sim::Scenario& scenario, Strategy strategy, std::uint64_t seed,
                            std::ostream* trace) {
  return sim::run_trial(scenario, strategy, initials_for_seed(scenario, seed), trace);
}

io::json trial_to_json(const sim::TrialMetrics& m, Strategy strategy, std::uint64_t seed) {
  io::json j;
  j["strategy"] = to_string(strategy);
  j["seed"] = seed;
  j["ticks"] = m.ticks;
  j["initial_rescuees"] = m.initial_rescuees;
  io::json costs = io::json::array();
  for (const auto& c : compute_costs(m)) {
    costs.push_back({{"task", to_string(c.task)},
                     {"rescued", c.rescued},
                     {"energy_spent", c.energy_spent},
                     {"hp_spent", c.hp_spent},
                     {"energy_per_rescuee", opt_json(c.energy_per_rescuee)},
                     {"hp_per_rescuee", opt_json(c.hp_per_rescuee)}});
  }
  j["tasks"] = costs;
  io::json rounds = io::json::array();
  for (const auto& r : m.rounds) {
    rounds.push_back({{"index", r.index},
                      {"start_tick", r.start_tick},
                      {"end_tick", r.end_tick},
                      {"truncated", r.truncated},
                      {"hard_group", r.hard_group},
                      {"easy_group", r.easy_group},
                      {"rescued_easy", r.rescued_easy},
                      {"rescued_hard", r.rescued_hard},
                      {"energy_spent", r.energy_spent},
                      {"hp_spent", r.hp_spent}});
  }
  j["rounds"] = rounds;
  const auto& d = m.diagnostics;
  j["diagnostics"] = {{"deadlocks", d.deadlocks},
                      {"deadlock_swaps", d.deadlock_swaps},
                      {"full_rotation_stalls", d.full_rotation_stalls},
                      {"unreachable_targets", d.unreachable_targets}};
  return j;
}

void ExperimentPlan::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (strategies.empty()) throw ConfigError("at least one strategy is required");
  auto sorted = strategies;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("strategy listed twice");
}

std::optional<double> metric_value(const TrialRow& row, Task task, Metric metric) {
  const auto it = std::find_if(row.costs.begin(), row.costs.end(),
                               [task](const CostRow& c) { return c.task == task; });
  if (it == row.costs.end()) return std::nullopt;
  switch (metric) {
    case Metric::kRescued: return static_cast<double>(it->rescued);
    case Metric::kEnergyPerRescuee: return it->energy_per_rescuee;
    case Metric::kHpPerRescuee: return it->hp_per_rescuee;
  }
  return std::nullopt;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows, const std::vector<Strategy>& strategies) {
  std::vector<SummaryRow> out;
  for (Task task : kAllTasks) {
    for (Metric metric : kAllMetrics) {
      for (Strategy s : strategies) {
        std::vector<double> xs;
        for (const auto& r : rows) {
          if (r.strategy != s) continue;
          if (auto v = metric_value(r, task, metric)) xs.push_back(*v);
        }
        SummaryRow row{s, task, metric, static_cast<int>(xs.size()), std::nullopt, std::nullopt};
        if (!xs.empty()) {
          double sum = 0.0;
          for (double x : xs) sum += x;
          const double mean = sum / static_cast<double>(xs.size());
          double ss = 0.0;
          for (double x : xs) ss += (x - mean) * (x - mean);
          row.mean = mean;
          row.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
        }
        out.push_back(row);
      }
    }
  }
  return out;
}

std::string ExperimentReport::trials_csv() const {
  std::ostringstream out;
  out << "strategy,trial,initial_hash,ticks,rounds";
  for (Task t : kAllTasks) {
    const auto n = to_string(t);
    out << ",rescued_" << n << ",energy_spent_" << n << ",hp_spent_" << n << ",energy_per_rescuee_" << n
        << ",hp_per_rescuee_" << n;
  }
  out << ",deadlocks,full_rotation_stalls\n";
  for (const auto& r : trials) {
    out << to_string(r.strategy) << ',' << r.trial << ',' << r.initial_hash << ',' << r.metrics.ticks << ','
        << r.metrics.rounds.size();
    for (const auto& c : r.costs) {
      out << ',' << c.rescued << ',' << num(c.energy_spent) << ',' << num(c.hp_spent) << ','
          << opt_num(c.energy_per_rescuee) << ',' << opt_num(c.hp_per_rescuee);
    }
    out << ',' << r.metrics.diagnostics.deadlocks << ',' << r.metrics.diagnostics.full_rotation_stalls << '\n';
  }
  return out.str();
}

std::string ExperimentReport::summary_csv() const {
  std::ostringstream out;
  out << "task,metric,strategy,n,mean,sd\n";
  for (const auto& s : summary) {
    out << to_string(s.task) << ',' << to_string(s.metric) << ',' << to_string(s.strategy) << ',' << s.n << ','
        << opt_num(s.mean) << ',' << opt_num(s.sd) << '\n';
  }
  return out.str();
}

io::json ExperimentReport::to_json() const {
  io::json j;
  io::json rows = io::json::array();
  for (const auto& r : trials) {
    io::json t = trial_to_json(r.metrics, r.strategy, 0);
    t.erase("seed");
    t["trial"] = r.trial;
    t["initial_hash"] = r.initial_hash;
    rows.push_back(std::move(t));
  }
  j["trials"] = rows;
  io::json summary_rows = io::json::array();
  for (const auto& s : summary) {
    summary_rows.push_back({{"task", to_string(s.task)},
                            {"metric", to_string(s.metric)},
                            {"strategy", to_string(s.strategy)},
                            {"n", s.n},
                            {"mean", opt_json(s.mean)},
                            {"sd", opt_json(s.sd)}});
  }
  j["summary"] = summary_rows;
  return j;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
  return run_experiment(plan, sim::load_scenario(plan.scenario_path));
}

ExperimentReport run_experiment(const ExperimentPlan& plan, const sim::Scenario& scenario) {
  plan.validate();
  sim::validate_scenario(scenario);
  const auto initials = sample_initials(plan.master_seed, scenario.robots, plan.trials, scenario.initials);

  ExperimentReport report;
  for (Strategy s : plan.strategies) {
    for (int t = 0; t < plan.trials; ++t) {
      const auto& ic = initials.trials[static_cast<std::size_t>(t)];
      TrialRow row;
      row.strategy = s;
      row.trial = t;
      row.initial_hash = initial_state_hash(scenario, ic);
      row.metrics = sim::run_trial(scenario, s, ic);
      row.costs = compute_costs(row.metrics);
      log::info("trial ", to_string(s), " #", t, ": rescued easy ", row.metrics.rescued_easy, ", hard ",
                row.metrics.rescued_hard);
      report.trials.push_back(std::move(row));
    }
  }
  std::sort(report.trials.begin(), report.trials.end(), [](const TrialRow& a, const TrialRow& b) {
    return std::pair(a.strategy, a.trial) < std::pair(b.strategy, b.trial);
  });
  report.summary = summarize(report.trials, plan.strategies);

  if (!plan.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(plan.out_dir, ec);
    if (ec) throw ConfigError("cannot create " + plan.out_dir.string() + ": " + ec.message());
    write_file(plan.out_dir / "trials.csv", report.trials_csv());
    write_file(plan.out_dir / "summary.csv", report.summary_csv());
    write_file(plan.out_dir / "report.json", report.to_json().dump(2) + "\n");
  }
  return report;
}

}  // namespace rne::harness
