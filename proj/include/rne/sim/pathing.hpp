#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rne/sim/world.hpp"

namespace rne::sim {

// Fixed neighbour order; every tie in the simulator resolves through it.
inline constexpr std::array<Cell, 8> kNeighbourSteps{
    Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1},
    Cell{1, 1}, Cell{-1, 1}, Cell{1, -1}, Cell{-1, -1}};

// True when a single 8-neighbour step from `from` to `to` is legal on the
// static map. Diagonal steps may not cut a blocked corner.
bool step_allowed(const Grid& grid, Cell from, Cell to);

struct PathQuery {
  Cell from;
  std::span<const Cell> goals;
  // Extra cost of entering a cell (known radiation); may be empty.
  std::function<double(Cell)> extra_cost;
  // Cells treated as blocked on top of the static map; may be empty.
  std::function<bool(Cell)> blocked;
};

// A* over the 8-connected grid with unit step cost. Returns the cells to
// visit after `from`, ending on a goal; empty when `from` is already a goal;
// nullopt when no goal is reachable.
std::optional<std::vector<Cell>> plan_path(const Grid& grid, const PathQuery& query);

}  // namespace rne::sim
