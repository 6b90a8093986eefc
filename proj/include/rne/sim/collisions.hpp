#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rne/sim/world.hpp"

namespace rne::sim {

// Mutable view of robot positions for one movement phase.
struct Arena {
  const Grid& grid;
  std::vector<Cell>& positions;  // per robot
  std::vector<int>& occupancy;  // per grid cell: robot index or -1
  std::span<const Cell> desired;  // per robot: planned next cell
  std::span<const Cell> goals;  // per robot: final target, ranks sidesteps

  bool can_step(std::size_t robot, Cell to) const;
  void move(std::size_t robot, Cell to);
};

struct Move {
  std::size_t robot = 0;
  Cell from;
  Cell to;
  bool sidestep = false;
};

// Robots whose planned cells conflict, highest priority first.
struct CollisionList {
  std::vector<std::size_t> order;
};

// Sorts `members` by priority descending, ties by id ascending.
CollisionList make_collision_list(std::vector<std::size_t> members, std::span<const double> priority,
                                  std::span<const std::string> ids);

// The head moves if its planned cell is free and leaves the list; the rest
// hold until it has gone, then the same rule applies to the remainder. Stops
// at the first head that cannot move.
std::vector<Move> avoid_collisions(const CollisionList& list, Arena& arena);

// Called when avoid_collisions moved nobody. For i = 1, 2, ... the head and
// the i-th member switch places; the promoted robot takes its planned cell or,
// if that is taken, steps aside to a free neighbour, and avoid_collisions
// continues on the rest. Returns after the first switch that moves anyone.
// An empty result means a full rotation stalled.
std::vector<Move> resolve_deadlock(const CollisionList& list, Arena& arena,
                                   SimDiagnostics* diagnostics = nullptr);

}  // namespace rne::sim
