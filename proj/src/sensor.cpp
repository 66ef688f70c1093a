#include "sentinel/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sentinel/errors.hpp"
#include "sentinel/local_view.hpp"

namespace sentinel {

namespace {

void stamp_disc(BinaryGrid& grid, WorldPoint center, double radius) {
  const MapGeometry& geom = grid.geom;
  const GridPoint lo = world_to_grid({center.x - radius, center.y - radius}, geom);
  const GridPoint hi = world_to_grid({center.x + radius, center.y + radius}, geom);
  for (int y = std::max(0, lo.y); y <= std::min(geom.height_cells - 1, hi.y); ++y) {
    for (int x = std::max(0, lo.x); x <= std::min(geom.width_cells - 1, hi.x); ++x) {
      const WorldPoint c = grid_to_world({x, y}, geom);
      if (std::hypot(c.x - center.x, c.y - center.y) <= radius) {
        grid.at({x, y}) = BinaryGrid::kOccupied;
      }
    }
  }
}

void stamp_box(BinaryGrid& grid, WorldPoint center, double width, double length) {
  const MapGeometry& geom = grid.geom;
  const double res = geom.resolution;
  const auto span = [&](double lo, double hi, double origin, int cells) {
    const int first = std::max(0, static_cast<int>(std::floor((lo - origin) / res + 1e-9)));
    const int last =
        std::min(cells - 1, static_cast<int>(std::ceil((hi - origin) / res - 1e-9)) - 1);
    return std::pair<int, int>{first, last};
  };
  const auto [x0, x1] = span(center.x - width / 2, center.x + width / 2,
                             geom.origin_world.x, geom.width_cells);
  const auto [y0, y1] = span(center.y - length / 2, center.y + length / 2,
                             geom.origin_world.y, geom.height_cells);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      grid.at({x, y}) = BinaryGrid::kOccupied;
    }
  }
}

/// Amanatides-Woo march: ray parameter at entry into the first occupied
/// cell, or infinity if the ray leaves the grid / exceeds max_range clean.
double march_grid(const BinaryGrid& grid, WorldPoint origin, double dx, double dy,
                  double max_range) {
  const MapGeometry& geom = grid.geom;
  GridPoint cell = world_to_grid(origin, geom);
  if (!geom.in_bounds(cell)) return std::numeric_limits<double>::infinity();
  if (grid.occupied(cell)) return 0.0;

  const double res = geom.resolution;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);

  // Ray parameter at the first vertical/horizontal cell boundary ahead.
  const double inf = std::numeric_limits<double>::infinity();
  double t_max_x = inf, t_max_y = inf, t_delta_x = inf, t_delta_y = inf;
  if (step_x != 0) {
    const double edge =
        geom.origin_world.x + (cell.x + (step_x > 0 ? 1 : 0)) * res;
    t_max_x = (edge - origin.x) / dx;
    t_delta_x = res / std::abs(dx);
  }
  if (step_y != 0) {
    const double edge =
        geom.origin_world.y + (cell.y + (step_y > 0 ? 1 : 0)) * res;
    t_max_y = (edge - origin.y) / dy;
    t_delta_y = res / std::abs(dy);
  }

  while (true) {
    double t_entry;
    if (t_max_x < t_max_y) {
      t_entry = t_max_x;
      t_max_x += t_delta_x;
      cell.x += step_x;
    } else {
      t_entry = t_max_y;
      t_max_y += t_delta_y;
      cell.y += step_y;
    }
    if (t_entry > max_range) return inf;
    if (!geom.in_bounds(cell)) return inf;  // grid is convex; no re-entry
    if (grid.occupied(cell)) return t_entry;
  }
}

/// Smallest positive ray parameter hitting a circle, or infinity.
double hit_circle(WorldPoint origin, double dx, double dy, WorldPoint center,
                  double radius) {
  const double ox = origin.x - center.x;
  const double oy = origin.y - center.y;
  const double b = ox * dx + oy * dy;
  const double c = ox * ox + oy * oy - radius * radius;
  const double disc = b * b - c;  // direction is unit length
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  const double root = std::sqrt(disc);
  const double t0 = -b - root;
  if (t0 > 0.0) return t0;
  const double t1 = -b + root;
  if (t1 > 0.0) return 0.0;  // origin inside the circle
  return std::numeric_limits<double>::infinity();
}

}  // namespace

BinaryGrid rasterize_live(const WorldModel& world, const BinaryGrid& prior) {
  BinaryGrid live = prior;
  for (const IntruderState& intruder : world.intruders) {
    if (!intruder.active()) continue;
    if (intruder.footprint.kind == Footprint::Kind::disc) {
      stamp_disc(live, intruder.pose, intruder.footprint.radius);
    } else {
      stamp_box(live, intruder.pose, intruder.footprint.width, intruder.footprint.length);
    }
  }
  return live;
}

std::vector<double> raycast(const WorldModel& world, WorldPoint pose, double heading,
                            const SensorSpec& spec, const BinaryGrid& obstacles,
                            int exclude_robot_id, Rng* noise_rng) {
  if (spec.beam_count <= 0 || spec.max_range <= 0.0) {
    throw InvalidParameterError("sensor needs beam_count > 0 and max_range > 0");
  }
  std::vector<double> ranges(static_cast<std::size_t>(spec.beam_count));
  const double increment = 2.0 * M_PI / spec.beam_count;
  for (int k = 0; k < spec.beam_count; ++k) {
    const double bearing = heading + k * increment;
    const double dx = std::cos(bearing);
    const double dy = std::sin(bearing);

    double range = march_grid(obstacles, pose, dx, dy, spec.max_range);
    for (const RobotState& other : world.robots) {
      if (other.id == exclude_robot_id) continue;
      range = std::min(range, hit_circle(pose, dx, dy, other.pose, other.diameter / 2.0));
    }
    range = std::min(range, spec.max_range);

    if (spec.range_noise_sigma > 0.0 && noise_rng != nullptr) {
      range = std::clamp(range + noise_rng->gaussian(spec.range_noise_sigma), 0.0,
                         spec.max_range);
    }
    ranges[static_cast<std::size_t>(k)] = range;
  }
  return ranges;
}

Costmap scan_to_costmap(const std::vector<double>& scan, WorldPoint pose, double heading,
                        const SensorSpec& spec, int local_w, int local_l,
                        double inflation_radius, const MapGeometry& global_geom) {
  const GridPoint robot_cell = world_to_grid(pose, global_geom);
  const auto [tl, br] = crop_coords(robot_cell, local_w, local_l);
  (void)br;

  MapGeometry geom;
  geom.width_cells = local_w;
  geom.height_cells = local_l;
  geom.resolution = global_geom.resolution;
  geom.origin_world = {global_geom.origin_world.x + tl.x * global_geom.resolution,
                       global_geom.origin_world.y + tl.y * global_geom.resolution};
  Costmap costmap = Costmap::zeros(geom);

  const double res = geom.resolution;
  const int reach = inflation_radius > 0.0
                        ? static_cast<int>(std::floor(inflation_radius / res + 1e-9))
                        : 0;
  const double increment = 2.0 * M_PI / spec.beam_count;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const double range = scan[k];
    if (range >= spec.max_range) continue;  // capped beam, no obstacle
    const double bearing = heading + static_cast<double>(k) * increment;
    // Nudge half a cell along the beam so the endpoint lands inside the hit
    // cell rather than on its entry boundary.
    const WorldPoint endpoint{pose.x + (range + 0.5 * res) * std::cos(bearing),
                              pose.y + (range + 0.5 * res) * std::sin(bearing)};
    const GridPoint hit = world_to_grid(endpoint, geom);
    if (!geom.in_bounds(hit)) continue;
    costmap.at(hit) = 100;

    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const GridPoint n{hit.x + dx, hit.y + dy};
        if (!geom.in_bounds(n)) continue;
        const double d = std::hypot(dx, dy) * res;
        if (d > inflation_radius) continue;
        const auto cost =
            static_cast<std::uint8_t>(std::lround(100.0 * (1.0 - d / inflation_radius)));
        costmap.at(n) = std::max(costmap.at(n), cost);
      }
    }
  }
  return costmap;
}

}  // namespace sentinel
