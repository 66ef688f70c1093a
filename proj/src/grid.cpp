#include "sentinel/grid.hpp"

#include <cmath>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

// Guards against quotients like (2-(-1))/0.05 = 59.999999999999996 flooring
// into the wrong cell when the world point sits exactly on a cell boundary.
// One billionth of a cell is far below any physical scale used here.
constexpr double kCellEpsilon = 1e-9;

void check_geometry(const MapGeometry& geom) {
  if (geom.resolution <= 0.0) {
    throw InvalidParameterError("grid resolution must be > 0, got " +
                                std::to_string(geom.resolution));
  }
}

}  // namespace

Costmap Costmap::zeros(const MapGeometry& geom) {
  return Costmap{geom, std::vector<std::uint8_t>(geom.cell_count(), 0)};
}

BinaryGrid BinaryGrid::filled(const MapGeometry& geom, std::uint8_t value) {
  return BinaryGrid{geom, std::vector<std::uint8_t>(geom.cell_count(), value)};
}

BinaryGrid threshold(const Costmap& map, int thresh) {
  if (thresh < 1 || thresh > 100) {
    throw InvalidParameterError("threshold must lie in [1, 100], got " +
                                std::to_string(thresh));
  }
  BinaryGrid out;
  out.geom = map.geom;
  out.cells.resize(map.cells.size());
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    out.cells[i] = map.cells[i] >= thresh ? BinaryGrid::kOccupied : BinaryGrid::kFree;
  }
  return out;
}

GridPoint world_to_grid(WorldPoint p, const MapGeometry& geom) {
  check_geometry(geom);
  const double gx = (p.x - geom.origin_world.x) / geom.resolution;
  const double gy = (p.y - geom.origin_world.y) / geom.resolution;
  return {static_cast<int>(std::floor(gx + kCellEpsilon)),
          static_cast<int>(std::floor(gy + kCellEpsilon))};
}

WorldPoint grid_to_world(GridPoint g, const MapGeometry& geom) {
  return {geom.origin_world.x + (g.x + 0.5) * geom.resolution,
          geom.origin_world.y + (g.y + 0.5) * geom.resolution};
}

BinaryGrid inflate(const BinaryGrid& grid, double radius_m) {
  if (radius_m < 0.0) {
    throw InvalidParameterError("inflation radius must be >= 0, got " +
                                std::to_string(radius_m));
  }
  if (radius_m == 0.0) return grid;
  check_geometry(grid.geom);

  // Disk mask over cell-center offsets, inclusive of the boundary.
  const double radius_cells = radius_m / grid.geom.resolution;
  const int reach = static_cast<int>(std::floor(radius_cells + kCellEpsilon));
  const double limit_sq = radius_cells * radius_cells + kCellEpsilon;
  std::vector<GridPoint> mask;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <= limit_sq) {
        mask.push_back({dx, dy});
      }
    }
  }

  BinaryGrid out = BinaryGrid::filled(grid.geom, BinaryGrid::kFree);
  for (int y = 0; y < grid.geom.height_cells; ++y) {
    for (int x = 0; x < grid.geom.width_cells; ++x) {
      if (!grid.occupied({x, y})) continue;
      for (const GridPoint& d : mask) {
        const GridPoint n{x + d.x, y + d.y};
        if (grid.geom.in_bounds(n)) out.at(n) = BinaryGrid::kOccupied;
      }
    }
  }
  return out;
}

}  // namespace sentinel
