#include "rne/grouping.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include "rne/errors.hpp"

namespace rne {

Role parse_role(std::string_view text) {
  if (text == "carrier") return Role::kCarrier;
  if (text == "supplier") return Role::kSupplier;
  if (text == "observer") return Role::kObserver;
  throw ConfigError("unknown role '" + std::string(text) + "'");
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kCarrier: return "carrier";
    case Role::kSupplier: return "supplier";
    case Role::kObserver: return "observer";
  }
  return "carrier";
}

Difficulty parse_difficulty(std::string_view text) {
  if (text == "easy") return Difficulty::kEasy;
  if (text == "hard") return Difficulty::kHard;
  throw ConfigError("unknown task difficulty '" + std::string(text) + "'");
}

std::string_view to_string(Difficulty d) { return d == Difficulty::kHard ? "hard" : "easy"; }

Strategy parse_strategy(std::string_view text) {
  if (text == "rne" || text == "RNE") return Strategy::kRne;
  if (text == "dis" || text == "DIS") return Strategy::kDis;
  if (text == "eng" || text == "ENG") return Strategy::kEng;
  if (text == "hp_dis" || text == "HP_DIS") return Strategy::kHpDis;
  throw ConfigError("unknown strategy '" + std::string(text) + "'");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kRne: return "rne";
    case Strategy::kDis: return "dis";
    case Strategy::kEng: return "eng";
    case Strategy::kHpDis: return "hp_dis";
  }
  return "rne";
}

namespace usar {

std::vector<std::string> labels() { return {"hp", "v", "sen", "eng", "res", "cap", "obs"}; }

WeightVector default_weights() { return WeightVector({6, 6, 6, 4, 2, 2, 2}); }

}  // namespace usar

void validate_snapshot(const RobotSnapshot& robot) {
  if (robot.needs.size() != usar::kCategories)
    throw ConfigError("robot '" + robot.id + "' needs vector must have 7 categories");
  const double hp = robot.needs[usar::kHp];
  const double eng = robot.needs[usar::kEnergy];
  if (hp > 100.0 || eng > 100.0)
    throw ConfigError("robot '" + robot.id + "' hp and energy must lie in [0, 100]");
}

namespace {

using NeedsIndex = std::unordered_map<std::string, const NeedsVector*>;

NeedsIndex index_needs(std::span<const RobotSnapshot> roster) {
  NeedsIndex index;
  for (const auto& r : roster) {
    if (!index.emplace(r.id, &r.needs).second)
      throw PartitionError("duplicate robot id '" + r.id + "'");
  }
  return index;
}

GroupNeedsMatrix matrix_of(const std::vector<std::string>& ids, const NeedsIndex& index) {
  std::vector<NeedsVector> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw PartitionError("unknown robot id '" + id + "'");
    rows.push_back(*it->second);
  }
  return GroupNeedsMatrix(std::move(rows));
}

TrustValue split_score(const std::vector<std::string>& a, const std::vector<std::string>& b,
                       const NeedsIndex& index, const WeightVector& weights, const RneConfig& cfg) {
  return group_group_trust(matrix_of(a, index), matrix_of(b, index), weights, cfg);
}

std::vector<std::string> joined(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::vector<std::string> out(x);
  out.insert(out.end(), y.begin(), y.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<const RobotSnapshot*> of_role(std::span<const RobotSnapshot> robots, Role role) {
  std::vector<const RobotSnapshot*> out;
  for (const auto& r : robots) {
    if (r.role == role) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->id < b->id; });
  return out;
}

void require_even_roles(std::span<const RobotSnapshot> robots) {
  for (Role role : kAllRoles) {
    if (of_role(robots, role).size() % 2 != 0)
      throw PartitionError("role '" + std::string(to_string(role)) + "' has an odd member count");
  }
}

double intra_score(const std::vector<std::string>& ids, const NeedsIndex& index,
                   const WeightVector& weights, const RneConfig& cfg) {
  if (ids.size() < 2) return 0.0;
  return intra_group_trust(matrix_of(ids, index), weights, cfg);
}

// Ranks each role by `before` and sends the leading half to the hard task.
template <typename Less>
GroupAssignment split_ranked(std::span<const RobotSnapshot> robots, Strategy strategy, Less before) {
  require_even_roles(robots);
  GroupAssignment out;
  out.strategy = strategy;
  for (Role role : kAllRoles) {
    auto members = of_role(robots, role);
    std::stable_sort(members.begin(), members.end(), before);
    const std::size_t half = members.size() / 2;
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < half ? out.hard_group : out.easy_group).push_back(members[i]->id);
    }
  }
  std::sort(out.hard_group.begin(), out.hard_group.end());
  std::sort(out.easy_group.begin(), out.easy_group.end());
  return out;
}

const TaskSite& hard_site(std::span<const TaskSite> tasks) {
  if (tasks.size() != 2) throw ConfigError("exactly two task sites are required");
  auto it = std::find_if(tasks.begin(), tasks.end(),
                         [](const TaskSite& t) { return t.difficulty == Difficulty::kHard; });
  if (it == tasks.end() || tasks[0].difficulty == tasks[1].difficulty)
    throw ConfigError("task sites must be one easy and one hard");
  return *it;
}

}  // namespace

std::vector<Bipartition> all_bipartitions(std::span<const RobotSnapshot> members, std::size_t m) {
  if (m < 1) throw PartitionError("partition size must be at least 1");
  if (members.size() != 2 * m)
    throw PartitionError("bipartition needs exactly 2m members, got " +
                         std::to_string(members.size()));
  std::vector<std::string> ids;
  for (const auto& r : members) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw PartitionError("duplicate member id");

  // ids[0] is pinned to half_a; choose the other m - 1 from ids[1..] in
  // lexicographic order of index combinations.
  const std::size_t n = ids.size();
  std::vector<std::size_t> pick(m - 1);
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i + 1;

  std::vector<Bipartition> out;
  while (true) {
    Bipartition b;
    std::vector<bool> in_a(n, false);
    in_a[0] = true;
    for (std::size_t idx : pick) in_a[idx] = true;
    for (std::size_t i = 0; i < n; ++i) (in_a[i] ? b.half_a : b.half_b).push_back(ids[i]);
    out.push_back(std::move(b));

    // Advance to the next combination of pick from {1, ..., n-1}.
    std::size_t k = pick.size();
    while (k > 0 && pick[k - 1] == n - pick.size() + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

Bipartition best_split(std::span<const RobotSnapshot> members, const WeightVector& weights,
                       const RneConfig& cfg) {
  if (members.empty()) throw DegenerateInputError("cannot split an empty pool");
  if (members.size() % 2 != 0) throw PartitionError("cannot split an odd pool into halves");
  const Role role = members.front().role;
  for (const auto& r : members) {
    if (r.role != role) throw PartitionError("best_split expects a single-role pool");
  }
  const NeedsIndex index = index_needs(members);
  auto candidates = all_bipartitions(members, members.size() / 2);
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].score = split_score(candidates[i].half_a, candidates[i].half_b, index, weights, cfg);
    if (candidates[i].score.value > candidates[best].score.value) best = i;
  }
  return candidates[best];
}

Bipartition merge_step(const Bipartition& split_a, const Bipartition& split_b,
                       std::span<const RobotSnapshot> roster, const WeightVector& weights,
                       const RneConfig& cfg) {
  std::set<std::string> seen;
  for (const auto* half : {&split_a.half_a, &split_a.half_b, &split_b.half_a, &split_b.half_b}) {
    for (const auto& id : *half) {
      if (!seen.insert(id).second) throw PartitionError("merged pools overlap on '" + id + "'");
    }
  }
  if (split_a.empty()) return split_b;
  if (split_b.empty()) return split_a;

  const NeedsIndex index = index_needs(roster);
  Bipartition first{joined(split_a.half_a, split_b.half_a), joined(split_a.half_b, split_b.half_b), {}};
  Bipartition second{joined(split_a.half_a, split_b.half_b), joined(split_a.half_b, split_b.half_a), {}};
  first.score = split_score(first.half_a, first.half_b, index, weights, cfg);
  second.score = split_score(second.half_a, second.half_b, index, weights, cfg);
  return second.score.value > first.score.value ? second : first;
}

GroupAssignment rne_grouping(std::span<const RobotSnapshot> robots, const WeightVector& weights,
                             const RneConfig& cfg) {
  require_even_roles(robots);
  const NeedsIndex index = index_needs(robots);
  GroupAssignment out;
  out.strategy = Strategy::kRne;

  std::array<Bipartition, 3> per_role;
  for (std::size_t r = 0; r < kAllRoles.size(); ++r) {
    std::vector<RobotSnapshot> pool;
    for (const auto* p : of_role(robots, kAllRoles[r])) pool.push_back(*p);
    if (pool.empty()) continue;
    per_role[r] = best_split(pool, weights, cfg);
    out.diagnostics["split." + std::string(to_string(kAllRoles[r]))] = per_role[r].score.value;
  }

  const Bipartition cs = merge_step(per_role[0], per_role[1], robots, weights, cfg);
  out.diagnostics["merge.cs"] = cs.score.value;
  const Bipartition cso = merge_step(cs, per_role[2], robots, weights, cfg);
  out.diagnostics["merge.cso"] = cso.score.value;

  const double intra_a = intra_score(cso.half_a, index, weights, cfg);
  const double intra_b = intra_score(cso.half_b, index, weights, cfg);
  out.diagnostics["intra.a"] = intra_a;
  out.diagnostics["intra.b"] = intra_b;
  if (intra_b < intra_a) {
    out.hard_group = cso.half_b;
    out.easy_group = cso.half_a;
  } else {
    out.hard_group = cso.half_a;
    out.easy_group = cso.half_b;
  }
  out.diagnostics["intra.hard"] = std::min(intra_a, intra_b);
  return out;
}

GroupAssignment dis_grouping(std::span<const RobotSnapshot> robots, std::span<const TaskSite> tasks) {
  require_even_roles(robots);
  hard_site(tasks);

  struct Claim {
    const RobotSnapshot* robot;
    double nearest;
    std::size_t preferred;
  };
  std::vector<Claim> claims;
  for (const auto& r : robots) {
    const double d0 = euclidean(r.position, tasks[0].position);
    const double d1 = euclidean(r.position, tasks[1].position);
    claims.push_back({&r, std::min(d0, d1), d1 < d0 ? std::size_t{1} : std::size_t{0}});
  }
  std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
    if (a.nearest != b.nearest) return a.nearest < b.nearest;
    return a.robot->id < b.robot->id;
  });

  std::map<Role, std::size_t> quota;
  for (Role role : kAllRoles) quota[role] = of_role(robots, role).size() / 2;
  std::array<std::map<Role, std::size_t>, 2> taken;

  GroupAssignment out;
  out.strategy = Strategy::kDis;
  std::array<double, 2> travel{0.0, 0.0};
  for (const auto& c : claims) {
    std::size_t task = c.preferred;
    if (taken[task][c.robot->role] >= quota[c.robot->role]) task = 1 - task;
    ++taken[task][c.robot->role];
    travel[task] += euclidean(c.robot->position, tasks[task].position);
    (tasks[task].difficulty == Difficulty::kHard ? out.hard_group : out.easy_group)
        .push_back(c.robot->id);
  }
  std::sort(out.hard_group.begin(), out.hard_group.end());
  std::sort(out.easy_group.begin(), out.easy_group.end());
  for (std::size_t t = 0; t < 2; ++t) {
    out.diagnostics["distance." + std::string(to_string(tasks[t].difficulty))] = travel[t];
  }
  return out;
}

GroupAssignment eng_grouping(std::span<const RobotSnapshot> robots) {
  return split_ranked(robots, Strategy::kEng, [](const RobotSnapshot* a, const RobotSnapshot* b) {
    if (a->needs[usar::kEnergy] != b->needs[usar::kEnergy])
      return a->needs[usar::kEnergy] > b->needs[usar::kEnergy];
    return a->id < b->id;
  });
}

GroupAssignment hp_dis_grouping(std::span<const RobotSnapshot> robots,
                                std::span<const TaskSite> tasks) {
  const Cell target = hard_site(tasks).position;
  return split_ranked(robots, Strategy::kHpDis,
                      [target](const RobotSnapshot* a, const RobotSnapshot* b) {
                        if (a->needs[usar::kHp] != b->needs[usar::kHp])
                          return a->needs[usar::kHp] > b->needs[usar::kHp];
                        const double da = euclidean(a->position, target);
                        const double db = euclidean(b->position, target);
                        if (da != db) return da < db;
                        return a->id < b->id;
                      });
}

GroupAssignment assign_groups(Strategy strategy, std::span<const RobotSnapshot> robots,
                              std::span<const TaskSite> tasks, const WeightVector& weights,
                              const RneConfig& cfg) {
  switch (strategy) {
    case Strategy::kRne: return rne_grouping(robots, weights, cfg);
    case Strategy::kDis: return dis_grouping(robots, tasks);
    case Strategy::kEng: return eng_grouping(robots);
    case Strategy::kHpDis: return hp_dis_grouping(robots, tasks);
  }
  throw ConfigError("unknown strategy");
}

void validate_assignment(const GroupAssignment& assignment, std::span<const RobotSnapshot> robots) {
  std::map<std::string, Role> roles;
  for (const auto& r : robots) roles[r.id] = r.role;
  std::set<std::string> seen;
  std::map<Role, int> balance;
  auto visit = [&](const std::vector<std::string>& ids, int sign) {
    for (const auto& id : ids) {
      auto it = roles.find(id);
      if (it == roles.end()) throw PartitionError("assignment names unknown robot '" + id + "'");
      if (!seen.insert(id).second) throw PartitionError("robot '" + id + "' assigned twice");
      balance[it->second] += sign;
    }
  };
  visit(assignment.hard_group, +1);
  visit(assignment.easy_group, -1);
  if (seen.size() != roles.size()) throw PartitionError("assignment leaves robots unassigned");
  for (const auto& [role, diff] : balance) {
    if (diff != 0)
      throw PartitionError("role '" + std::string(to_string(role)) + "' is split unevenly");
  }
}

}  // namespace rne
