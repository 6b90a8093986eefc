#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rne/geometry.hpp"
#include "rne/needs.hpp"
#include "rne/trust.hpp"

namespace rne {

enum class Role { kCarrier, kSupplier, kObserver };
enum class Difficulty { kEasy, kHard };
enum class Strategy { kRne, kDis, kEng, kHpDis };

Role parse_role(std::string_view text);
std::string_view to_string(Role role);
Difficulty parse_difficulty(std::string_view text);
std::string_view to_string(Difficulty d);
Strategy parse_strategy(std::string_view text);
std::string_view to_string(Strategy s);

inline constexpr std::array<Role, 3> kAllRoles{Role::kCarrier, Role::kSupplier, Role::kObserver};
inline constexpr std::array<Strategy, 4> kAllStrategies{Strategy::kRne, Strategy::kDis,
                                                        Strategy::kEng, Strategy::kHpDis};

// Layout of the seven-category rescue needs space.
namespace usar {
inline constexpr std::size_t kHp = 0;
inline constexpr std::size_t kSpeed = 1;
inline constexpr std::size_t kSensing = 2;
inline constexpr std::size_t kEnergy = 3;
inline constexpr std::size_t kResources = 4;
inline constexpr std::size_t kCapacity = 5;
inline constexpr std::size_t kObserving = 6;
inline constexpr std::size_t kCategories = 7;

std::vector<std::string> labels();
// Safety categories 6, energy 4, capability categories 2.
WeightVector default_weights();
}  // namespace usar

struct RobotSnapshot {
  std::string id;
  Role role = Role::kCarrier;
  NeedsVector needs;
  Cell position;
};

// Throws ConfigError when the needs space is not the 7-category rescue layout
// or hp / energy leave [0, 100].
void validate_snapshot(const RobotSnapshot& robot);

struct TaskSite {
  Cell position;
  Difficulty difficulty = Difficulty::kEasy;
};

struct Bipartition {
  std::vector<std::string> half_a;
  std::vector<std::string> half_b;
  TrustValue score;  // trust from half_a to half_b

  bool empty() const { return half_a.empty() && half_b.empty(); }
};

struct GroupAssignment {
  std::vector<std::string> hard_group;
  std::vector<std::string> easy_group;
  Strategy strategy = Strategy::kRne;
  std::map<std::string, double> diagnostics;
};

// Every unordered split of `members` into two halves of size m, each listed
// once. half_a always holds the smallest id; output is ordered by half_a.
// Scores are left at zero.
std::vector<Bipartition> all_bipartitions(std::span<const RobotSnapshot> members, std::size_t m);

// Bipartition of a single-role pool with the largest trust from half_a to
// half_b. Ties keep the earliest candidate in enumeration order.
Bipartition best_split(std::span<const RobotSnapshot> members, const WeightVector& weights,
                       const RneConfig& cfg);

// Joins two splits of disjoint pools. Tries (a1+b1 | a2+b2) then
// (a1+b2 | a2+b1) and keeps the higher scoring; ties keep the first. An empty
// split passes the other one through unchanged.
Bipartition merge_step(const Bipartition& split_a, const Bipartition& split_b,
                       std::span<const RobotSnapshot> roster, const WeightVector& weights,
                       const RneConfig& cfg);

// Bottom-up grouping: per-role best split, carriers merged with suppliers,
// the result merged with observers. The half whose members trust each other
// most (lowest intra_group_trust) takes the hard task.
GroupAssignment rne_grouping(std::span<const RobotSnapshot> robots, const WeightVector& weights,
                             const RneConfig& cfg);

// Nearest-task claiming with per-role quotas of half the role's count.
GroupAssignment dis_grouping(std::span<const RobotSnapshot> robots, std::span<const TaskSite> tasks);

// Per role, higher-energy half to the hard task.
GroupAssignment eng_grouping(std::span<const RobotSnapshot> robots);

// Per role, higher-HP half to the hard task; equal HP ranked by distance to
// the hard site.
GroupAssignment hp_dis_grouping(std::span<const RobotSnapshot> robots,
                                std::span<const TaskSite> tasks);

GroupAssignment assign_groups(Strategy strategy, std::span<const RobotSnapshot> robots,
                              std::span<const TaskSite> tasks, const WeightVector& weights,
                              const RneConfig& cfg);

// Throws PartitionError unless the assignment splits the roster exactly with
// half of every role on each side.
void validate_assignment(const GroupAssignment& assignment, std::span<const RobotSnapshot> robots);

}  // namespace rne
