#pragma once

#include <cmath>
#include <cstddef>

namespace sentinel {

/// World-frame point, metres.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(WorldPoint a, WorldPoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Grid cell coordinate: x is the column, y is the row; row 0 is the
/// world-bottom row. May lie outside a grid (clamping is a caller concern).
struct GridPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }

/// Axis-aligned world rectangle, [x_min, x_max] x [y_min, y_max] metres.
struct WorldRect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(WorldPoint p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

/// Axis-aligned box in global grid cells, half-open: [x1, x2) x [y1, y2).
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  long long area() const {
    return static_cast<long long>(x2 - x1) * static_cast<long long>(y2 - y1);
  }
  bool valid() const { return x1 < x2 && y1 < y2; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Cell-count overlap of two half-open boxes; 0 when disjoint.
inline long long intersection_area(const BBox& a, const BBox& b) {
  const long long w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const long long h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0) return 0;
  return w * h;
}

/// Raster anchoring shared by all grid types. origin_world is the world
/// position of the lower-left corner of cell (0,0); cells are stored
/// row-major, bottom row first.
struct MapGeometry {
  int width_cells = 0;
  int height_cells = 0;
  double resolution = 0.05;  // metres per cell
  WorldPoint origin_world;

  bool in_bounds(GridPoint g) const {
    return g.x >= 0 && g.x < width_cells && g.y >= 0 && g.y < height_cells;
  }
  std::size_t index(GridPoint g) const {
    return static_cast<std::size_t>(g.y) * static_cast<std::size_t>(width_cells) +
           static_cast<std::size_t>(g.x);
  }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(width_cells) * static_cast<std::size_t>(height_cells);
  }

  friend bool operator==(const MapGeometry& a, const MapGeometry& b) {
    return a.width_cells == b.width_cells && a.height_cells == b.height_cells &&
           a.resolution == b.resolution && a.origin_world.x == b.origin_world.x &&
           a.origin_world.y == b.origin_world.y;
  }
};

}  // namespace sentinel
