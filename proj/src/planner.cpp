#include "sentinel/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

constexpr double kDiag = 1.4142135623730951;

double octile(GridPoint a, GridPoint b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return (kDiag - 1.0) * std::min(dx, dy) + std::max(dx, dy);
}

struct QueueEntry {
  double f;
  std::size_t cell;

  bool operator>(const QueueEntry& o) const {
    // Tie-break on the cell index so expansion order is deterministic.
    return f > o.f || (f == o.f && cell > o.cell);
  }
};

}  // namespace

std::vector<GridPoint> plan_path(const BinaryGrid& grid, GridPoint start, GridPoint goal) {
  const MapGeometry& geom = grid.geom;
  if (!geom.in_bounds(start) || !geom.in_bounds(goal)) {
    throw InvalidParameterError("plan_path: start or goal outside the grid");
  }
  if (grid.occupied(start) || grid.occupied(goal)) {
    throw NoPathError("plan_path: start or goal cell is occupied");
  }
  if (start == goal) return {start};

  const std::size_t n = geom.cell_count();
  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> parent(n, -1);
  std::vector<char> closed(n, 0);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;

  const std::size_t start_idx = geom.index(start);
  const std::size_t goal_idx = geom.index(goal);
  g[start_idx] = 0.0;
  open.push({octile(start, goal), start_idx});

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  static constexpr double kStep[8] = {1, 1, 1, 1, kDiag, kDiag, kDiag, kDiag};

  while (!open.empty()) {
    const std::size_t current = open.top().cell;
    open.pop();
    if (closed[current]) continue;
    closed[current] = 1;
    if (current == goal_idx) break;

    const GridPoint c{static_cast<int>(current % geom.width_cells),
                      static_cast<int>(current / geom.width_cells)};
    for (int k = 0; k < 8; ++k) {
      const GridPoint nb{c.x + kDx[k], c.y + kDy[k]};
      if (!geom.in_bounds(nb)) continue;
      const std::size_t nb_idx = geom.index(nb);
      if (closed[nb_idx] || grid.occupied(nb)) continue;
      const double tentative = g[current] + kStep[k];
      if (tentative < g[nb_idx]) {
        g[nb_idx] = tentative;
        parent[nb_idx] = static_cast<std::int32_t>(current);
        open.push({tentative + octile(nb, goal), nb_idx});
      }
    }
  }

  if (!closed[goal_idx]) {
    throw NoPathError("plan_path: goal unreachable");
  }

  std::vector<GridPoint> path;
  for (std::int64_t at = static_cast<std::int64_t>(goal_idx); at >= 0;
       at = parent[static_cast<std::size_t>(at)]) {
    path.push_back({static_cast<int>(at % geom.width_cells),
                    static_cast<int>(at / geom.width_cells)});
    if (static_cast<std::size_t>(at) == start_idx) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double path_cost(const std::vector<GridPoint>& path) {
  double cost = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int dx = std::abs(path[i].x - path[i - 1].x);
    const int dy = std::abs(path[i].y - path[i - 1].y);
    cost += (dx == 1 && dy == 1) ? kDiag : 1.0;
  }
  return cost;
}

}  // namespace sentinel
