#include "sentinel/patrol.hpp"

#include <cmath>
#include <cstdio>

#include "sentinel/errors.hpp"

namespace sentinel {

bool clear_of_occupied(const BinaryGrid& grid, WorldPoint p, double clearance) {
  const MapGeometry& geom = grid.geom;
  const GridPoint cell = world_to_grid(p, geom);
  if (!geom.in_bounds(cell) || grid.occupied(cell)) return false;
  const int reach = static_cast<int>(std::ceil(clearance / geom.resolution));
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const GridPoint n{cell.x + dx, cell.y + dy};
      if (!geom.in_bounds(n)) continue;
      if (!grid.occupied(n)) continue;
      const WorldPoint c = grid_to_world(n, geom);
      if (std::hypot(c.x - p.x, c.y - p.y) < clearance) return false;
    }
  }
  return true;
}

WorldPoint gen_patrol_goal(const RobotState& robot, const WorldModel& world,
                           const BinaryGrid& inflated_prior, Rng& rng,
                           double wall_clearance, int max_tries) {
  if (world.robots.empty()) {
    throw InvalidParameterError("gen_patrol_goal: world has no robots");
  }
  double z = safe_distance(world.patrol_diagonal, static_cast<int>(world.robots.size()));

  for (int round = 0; round < 24; ++round) {
    for (int attempt = 0; attempt < max_tries; ++attempt) {
      const WorldPoint candidate{
          rng.uniform(world.interior.x_min, world.interior.x_max),
          rng.uniform(world.interior.y_min, world.interior.y_max)};

      if (distance(candidate, robot.pose) < z) continue;
      bool near_other_goal = false;
      for (const RobotState& other : world.robots) {
        if (other.id == robot.id || !other.patrol_goal) continue;
        if (distance(candidate, *other.patrol_goal) < z) {
          near_other_goal = true;
          break;
        }
      }
      if (near_other_goal) continue;
      if (!clear_of_occupied(inflated_prior, candidate, wall_clearance)) continue;
      return candidate;
    }
    z /= 2.0;
    std::fprintf(stderr, "[patrol] robot %d: relaxing goal spacing to z=%.3f m\n",
                 robot.id, z);
  }
  throw Error("gen_patrol_goal: sampling exhausted; arena has no admissible free space");
}

}  // namespace sentinel
