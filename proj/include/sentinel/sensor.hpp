#pragma once

#include <vector>

#include "sentinel/grid.hpp"
#include "sentinel/rng.hpp"
#include "sentinel/world.hpp"

namespace sentinel {

/// Copies the prior (walls) and stamps every active intruder footprint into
/// it: the occupancy snapshot a sensor sweep can hit this frame. Robots are
/// not stamped; raycast treats them as analytic discs.
BinaryGrid rasterize_live(const WorldModel& world, const BinaryGrid& prior);

/// Simulates one 360-degree sweep: beam_count evenly spaced bearings starting
/// at the heading. Each range is the distance to the first occupied cell of
/// the obstacle grid (grid march) or to the first ally robot disc (analytic),
/// capped at max_range. Gaussian range noise is drawn from noise_rng when the
/// spec's sigma is nonzero.
std::vector<double> raycast(const WorldModel& world, WorldPoint pose, double heading,
                            const SensorSpec& spec, const BinaryGrid& obstacles,
                            int exclude_robot_id = -1, Rng* noise_rng = nullptr);

/// Builds the robot-centered local costmap from a sweep: every hit endpoint
/// costs 100 and nearby cells receive linearly decaying costs within
/// inflation_radius. The window is local_w x local_l cells, anchored so its
/// cells coincide with global grid cells and the robot sits at the center
/// index.
Costmap scan_to_costmap(const std::vector<double>& scan, WorldPoint pose, double heading,
                        const SensorSpec& spec, int local_w, int local_l,
                        double inflation_radius, const MapGeometry& global_geom);

}  // namespace sentinel
