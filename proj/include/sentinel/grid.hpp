#pragma once

#include <cstdint>
#include <vector>

#include "sentinel/geometry.hpp"

namespace sentinel {

/// Occupancy costmap: cell values 0..100, row-major, bottom row first.
struct Costmap {
  MapGeometry geom;
  std::vector<std::uint8_t> cells;

  static Costmap zeros(const MapGeometry& geom);

  std::uint8_t at(GridPoint g) const { return cells[geom.index(g)]; }
  std::uint8_t& at(GridPoint g) { return cells[geom.index(g)]; }
};

/// Binary grid in grayscale-image convention: 0 = occupied, 255 = free.
struct BinaryGrid {
  static constexpr std::uint8_t kOccupied = 0;
  static constexpr std::uint8_t kFree = 255;

  MapGeometry geom;
  std::vector<std::uint8_t> cells;

  static BinaryGrid filled(const MapGeometry& geom, std::uint8_t value);

  std::uint8_t at(GridPoint g) const { return cells[geom.index(g)]; }
  std::uint8_t& at(GridPoint g) { return cells[geom.index(g)]; }
  bool occupied(GridPoint g) const { return at(g) == kOccupied; }
};

/// Binarizes a costmap: cost >= thresh becomes occupied (0), anything below
/// becomes free (255). thresh must lie in [1, 100].
BinaryGrid threshold(const Costmap& map, int thresh);

/// Cell containing a world point: floor((p - origin) / resolution) per
/// component. The result may lie outside the grid.
GridPoint world_to_grid(WorldPoint p, const MapGeometry& geom);

/// World position of a cell's center.
WorldPoint grid_to_world(GridPoint g, const MapGeometry& geom);

/// Occupies every cell whose center lies within radius_m (metres, inclusive)
/// of an occupied cell's center. radius 0 returns the input unchanged.
BinaryGrid inflate(const BinaryGrid& grid, double radius_m);

}  // namespace sentinel
