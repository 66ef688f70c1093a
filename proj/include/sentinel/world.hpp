#pragma once

#include <deque>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "sentinel/geometry.hpp"
#include "sentinel/grid.hpp"
#include "sentinel/rng.hpp"

namespace sentinel {

struct SensorSpec {
  int beam_count = 360;
  double max_range = 2.5;        // metres of usable laser range
  double rate_hz = 5.0;          // sensor frames per simulated second
  double range_noise_sigma = 0.0;
};

enum class RobotMode { patrolling, pursuing };

struct RobotState {
  int id = 0;
  WorldPoint pose;
  double heading = 0.0;  // radians, world frame
  double speed_limit = 0.22;
  double diameter = 0.21;  // footprint circle, metres
  SensorSpec sensor;
  std::optional<WorldPoint> patrol_goal;
  std::deque<WorldPoint> path;  // waypoints toward the current goal
  RobotMode mode = RobotMode::patrolling;
  double goal_age = 0.0;           // seconds since the goal was set
  double pursuit_staleness = 0.0;  // seconds since the pursued target was seen
};

/// Disc or axis-aligned rectangle, the shape an entity stamps on the floor.
struct Footprint {
  enum class Kind { disc, box };
  Kind kind = Kind::disc;
  double radius = 0.1;  // disc only, metres
  double width = 0.0;   // box only, metres (x extent)
  double length = 0.0;  // box only, metres (y extent)
};

struct IntruderState {
  int id = 0;
  WorldPoint pose;
  Footprint footprint;
  bool mobile = true;
  double speed = 0.22;
  std::optional<WorldPoint> escape_goal;  // set in the labyrinth scenario
  std::deque<WorldPoint> path;
  bool caught = false;
  bool escaped = false;

  bool active() const { return !caught && !escaped; }
};

/// Everything the simulation mutates: arena geometry, entities, clock, rng.
struct WorldModel {
  WorldRect ground;               // outer world bounds
  std::vector<WorldRect> walls;   // solid wall slabs
  std::vector<WorldRect> exits;   // door openings (informational)
  WorldRect interior;             // free region enclosed by the walls
  double patrol_diagonal = 0.0;   // diagonal of the enclosed area, metres
  std::vector<RobotState> robots;
  std::vector<IntruderState> intruders;
  double clock = 0.0;  // seconds
  Rng rng{0};

  bool inside_wall(WorldPoint p) const {
    for (const WorldRect& w : walls) {
      if (w.contains(p)) return true;
    }
    return false;
  }
};

/// 8x8 m ground with a closed 6x6 m square wall enclosure centered on it.
WorldModel make_map1();

/// 24x24 m ground with a 20x20 m wall boundary pierced by two 1 m door gaps
/// centered on the left and right sides.
WorldModel make_map2();

/// Custom arena from a flat key-value file. Recognized keys (repeatable
/// where it makes sense): `ground = x0 y0 x1 y1`, `wall = x0 y0 x1 y1`,
/// `door = x0 y0 x1 y1`, `interior = x0 y0 x1 y1`, `diagonal = metres`.
/// interior defaults to the ground and diagonal to the interior diagonal.
WorldModel load_arena(const std::filesystem::path& path);

/// Rasterizes the arena walls (only) at the given resolution and returns the
/// prior grid plus its inflated variant. The inflation should exceed the
/// local pipeline's effective inflation so the prior absorbs wall returns.
std::pair<BinaryGrid, BinaryGrid> build_global_maps(const WorldModel& world,
                                                    double resolution,
                                                    double global_inflation,
                                                    int thresh_global = 50);

/// Minimum patrol spacing z = diagonal / (2 * robot_count).
double safe_distance(double diagonal_m, int robot_count);

}  // namespace sentinel
