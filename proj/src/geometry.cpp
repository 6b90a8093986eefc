#include "rne/geometry.hpp"

#include <cmath>

namespace rne {

double euclidean(Cell a, Cell b) { return std::hypot(double(a.x - b.x), double(a.y - b.y)); }

}  // namespace rne
