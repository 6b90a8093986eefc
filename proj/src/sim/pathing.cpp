#include "rne/sim/pathing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace rne::sim {

bool step_allowed(const Grid& grid, Cell from, Cell to) {
  if (!grid.passable(to) || chebyshev(from, to) != 1) return false;
  if (from.x != to.x && from.y != to.y) {
    return grid.passable(Cell{to.x, from.y}) && grid.passable(Cell{from.x, to.y});
  }
  return true;
}

std::optional<std::vector<Cell>> plan_path(const Grid& grid, const PathQuery& query) {
  if (query.goals.empty()) return std::nullopt;
  const auto is_goal = [&](Cell c) {
    return std::find(query.goals.begin(), query.goals.end(), c) != query.goals.end();
  };
  if (is_goal(query.from)) return std::vector<Cell>{};

  const auto heuristic = [&](Cell c) {
    int best = std::numeric_limits<int>::max();
    for (Cell g : query.goals) best = std::min(best, chebyshev(c, g));
    return static_cast<double>(best);
  };

  const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
  std::vector<double> cost(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<bool> closed(n, false);

  // (f, insertion order, cell index); the counter keeps expansion order stable.
  using Entry = std::tuple<double, long long, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  long long counter = 0;
  const std::size_t start = grid.index(query.from);
  cost[start] = 0.0;
  open.emplace(heuristic(query.from), counter++, start);

  while (!open.empty()) {
    const auto [f, order, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = true;
    const Cell cur{static_cast<int>(idx % grid.width()), static_cast<int>(idx / grid.width())};
    if (is_goal(cur)) {
      std::vector<Cell> path;
      for (std::size_t at = idx; at != start; at = static_cast<std::size_t>(parent[at])) {
        path.push_back(Cell{static_cast<int>(at % grid.width()), static_cast<int>(at / grid.width())});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Cell d : kNeighbourSteps) {
      const Cell next{cur.x + d.x, cur.y + d.y};
      if (!step_allowed(grid, cur, next)) continue;
      if (query.blocked && query.blocked(next)) continue;
      const std::size_t ni = grid.index(next);
      if (closed[ni]) continue;
      const double g = cost[idx] + 1.0 + (query.extra_cost ? query.extra_cost(next) : 0.0);
      if (g < cost[ni]) {
        cost[ni] = g;
        parent[ni] = static_cast<int>(idx);
        open.emplace(g + heuristic(next), counter++, ni);
      }
    }
  }
  return std::nullopt;
}

}  // namespace rne::sim
