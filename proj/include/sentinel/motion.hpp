#pragma once

#include <vector>

#include "sentinel/fusion.hpp"
#include "sentinel/grid.hpp"
#include "sentinel/world.hpp"

namespace sentinel {

struct PursuitConfig {
  double associate_radius = 1.0;  // a detection this close to a pursuit goal refreshes it
  double timeout = 2.0;           // seconds without a refresh before giving up
  double reach_distance = 0.2;    // "arrived" distance for goals and escapes
};

/// Advances every mobile entity along its waypoint queue by dt seconds,
/// clamped against walls; marks intruders that reached their escape point as
/// escaped; advances the clock. Sensing cadence is the driver's job.
void step(WorldModel& world, double dt);

/// Assigns fused detections to robots: pursuing robots are refreshed by
/// detections near their goal; remaining detections go to the nearest idle
/// robots (globally greedy). Stale pursuers revert to patrolling.
void dispatch_pursuit(WorldModel& world, const std::vector<Detection>& fused,
                      const BinaryGrid& inflated_prior, const PursuitConfig& cfg);

/// Marks every active intruder within capture_radius of any robot as caught
/// and stops it. Escaped intruders are never caught.
void check_captures(WorldModel& world, double capture_radius);

/// Plans a path on the inflated prior and loads it into the entity's
/// waypoint queue as cell-center world points. Returns false (queue cleared)
/// when no path exists.
bool route_to(std::deque<WorldPoint>& path, WorldPoint from, WorldPoint to,
              const BinaryGrid& inflated_prior);

}  // namespace sentinel
