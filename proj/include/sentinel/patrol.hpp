#pragma once

#include "sentinel/grid.hpp"
#include "sentinel/rng.hpp"
#include "sentinel/world.hpp"

namespace sentinel {

/// True when p sits on a free cell and no occupied cell center lies within
/// clearance metres of it.
bool clear_of_occupied(const BinaryGrid& grid, WorldPoint p, double clearance);

/// Rejection-samples a patrol goal satisfying the three spacing conditions:
/// at least z from the robot's position, at least z from every other robot's
/// current goal (z = safe_distance of the arena diagonal and team size), and
/// at least wall_clearance from any occupied cell of the grid. After
/// max_tries rejections z is halved (reported on stderr) and sampling
/// restarts; a pathological arena eventually raises an exhaustion error.
WorldPoint gen_patrol_goal(const RobotState& robot, const WorldModel& world,
                           const BinaryGrid& inflated_prior, Rng& rng,
                           double wall_clearance = 0.4, int max_tries = 1000);

}  // namespace sentinel
