#pragma once

#include <vector>

#include "sentinel/grid.hpp"

namespace sentinel {

/// Shortest 8-connected path over free cells, start and goal inclusive, under
/// the octile metric (orthogonal step 1, diagonal step sqrt 2). Throws
/// NoPathError when the goal is occupied or unreachable.
std::vector<GridPoint> plan_path(const BinaryGrid& grid, GridPoint start, GridPoint goal);

/// Cost of a path under the octile metric; 0 for a single-cell path.
double path_cost(const std::vector<GridPoint>& path);

}  // namespace sentinel
