#pragma once

#include <compare>
#include <cstdlib>
#include <functional>

namespace rne {

struct Cell {
  int x = 0;
  int y = 0;

  auto operator<=>(const Cell&) const = default;
};

// 8-neighbour step count.
inline int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

double euclidean(Cell a, Cell b);

}  // namespace rne

template <>
struct std::hash<rne::Cell> {
  std::size_t operator()(const rne::Cell& c) const noexcept {
    return std::hash<long long>()((static_cast<long long>(c.x) << 32) ^ static_cast<unsigned>(c.y));
  }
};
