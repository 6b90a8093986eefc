#include "rne/sim/collisions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

#include "rne/sim/pathing.hpp"

namespace rne::sim {

bool Arena::can_step(std::size_t robot, Cell to) const {
  return step_allowed(grid, positions[robot], to) && occupancy[grid.index(to)] < 0;
}

void Arena::move(std::size_t robot, Cell to) {
  occupancy[grid.index(positions[robot])] = -1;
  occupancy[grid.index(to)] = static_cast<int>(robot);
  positions[robot] = to;
}

CollisionList make_collision_list(std::vector<std::size_t> members, std::span<const double> priority,
                                  std::span<const std::string> ids) {
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    if (priority[a] != priority[b]) return priority[a] > priority[b];
    return ids[a] < ids[b];
  });
  return CollisionList{std::move(members)};
}

namespace {

std::vector<Move> run_in_order(std::span<const std::size_t> order, Arena& arena) {
  std::vector<Move> moves;
  for (std::size_t robot : order) {
    const Cell to = arena.desired[robot];
    if (!arena.can_step(robot, to)) break;
    moves.push_back({robot, arena.positions[robot], to, false});
    arena.move(robot, to);
  }
  return moves;
}

std::optional<Cell> sidestep_cell(std::size_t robot, std::span<const std::size_t> others,
                                  const Arena& arena) {
  const Cell from = arena.positions[robot];
  std::optional<Cell> best;
  std::tuple<bool, int, std::size_t> best_key{true, std::numeric_limits<int>::max(), 0};
  for (std::size_t d = 0; d < kNeighbourSteps.size(); ++d) {
    const Cell c{from.x + kNeighbourSteps[d].x, from.y + kNeighbourSteps[d].y};
    if (!arena.can_step(robot, c)) continue;
    const bool wanted = std::any_of(others.begin(), others.end(),
                                    [&](std::size_t o) { return arena.desired[o] == c; });
    const std::tuple<bool, int, std::size_t> key{wanted, chebyshev(c, arena.goals[robot]), d};
    if (!best || key < best_key) {
      best = c;
      best_key = key;
    }
  }
  return best;
}

}  // namespace

std::vector<Move> avoid_collisions(const CollisionList& list, Arena& arena) {
  return run_in_order(list.order, arena);
}

std::vector<Move> resolve_deadlock(const CollisionList& list, Arena& arena,
                                   SimDiagnostics* diagnostics) {
  for (std::size_t i = 1; i < list.order.size(); ++i) {
    std::vector<std::size_t> order = list.order;
    std::swap(order[0], order[i]);
    if (diagnostics) ++diagnostics->deadlock_swaps;

    const std::size_t head = order.front();
    std::vector<Move> moves;
    if (arena.can_step(head, arena.desired[head])) {
      moves.push_back({head, arena.positions[head], arena.desired[head], false});
      arena.move(head, arena.desired[head]);
    } else if (auto side = sidestep_cell(head, std::span(order).subspan(1), arena)) {
      moves.push_back({head, arena.positions[head], *side, true});
      arena.move(head, *side);
    }
    if (moves.empty()) continue;
    auto rest = run_in_order(std::span(order).subspan(1), arena);
    moves.insert(moves.end(), rest.begin(), rest.end());
    return moves;
  }
  if (diagnostics) ++diagnostics->full_rotation_stalls;
  return {};
}

}  // namespace rne::sim
