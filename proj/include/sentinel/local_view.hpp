#pragma once

#include <utility>
#include <vector>

#include "sentinel/grid.hpp"

namespace sentinel {

/// Matched pair of crop rectangles: the same w_new x l_new window expressed
/// once in local-map cells and once in global-map cells. Corners are
/// half-open and in bounds; both spans are equal.
struct CropWindow {
  GridPoint lmap_tl;
  GridPoint lmap_br;
  GridPoint gmap_tl;
  GridPoint gmap_br;

  int width() const { return gmap_br.x - gmap_tl.x; }
  int height() const { return gmap_br.y - gmap_tl.y; }
};

/// One robot's processed sensor frame. The four grids share the window's
/// dimensions; boxes are in global grid coordinates.
struct LocalFrame {
  int robot_id = 0;
  CropWindow window;
  BinaryGrid live;        // what the sensor sees right now
  BinaryGrid prior_crop;  // matching slice of the inflated prior map
  BinaryGrid merged;      // live OR prior_crop
  BinaryGrid difference;  // |live - merged|: cells occupied now but not in the prior
  std::vector<BBox> boxes;
};

/// Window corners for a local map of local_w x local_l cells centered on the
/// robot's cell: (center - half extent, center + local extent - half extent).
/// Corners may fall outside the global grid; clamp_crop resolves that.
std::pair<GridPoint, GridPoint> crop_coords(GridPoint robot_cell, int local_w, int local_l);

/// Clamps a window (tl, br) against a global grid of global_w x global_l
/// cells, producing in-bounds crop rectangles of equal span for the local
/// grid (local_w x local_l) and the global grid. Throws EmptyWindowError if
/// the window misses the global grid entirely.
CropWindow clamp_crop(GridPoint tl, GridPoint br, int global_w, int global_l,
                      int local_w, int local_l);

/// Copies the half-open cell rectangle [tl, br) out of a grid. The output is
/// anchored at the rectangle's world position.
BinaryGrid crop(const BinaryGrid& grid, GridPoint tl, GridPoint br);

/// Cell is occupied (0) only where both inputs are occupied; everything a
/// single grid marks free stays free. Bitwise OR of the {0, 255} values.
BinaryGrid or_merge(const BinaryGrid& live, const BinaryGrid& prior_crop);

/// Per-cell |a - b|. With b = or_merge(a, prior), the 255 cells are exactly
/// those occupied live but free in the prior: the foreground.
BinaryGrid abs_diff(const BinaryGrid& live, const BinaryGrid& merged);

/// One maximal 8-connected set of foreground (255) cells, sorted by
/// row-major index.
using Component = std::vector<GridPoint>;

/// Partitions a grid's foreground into 8-connected components, ordered by
/// each component's smallest row-major cell index.
std::vector<Component> connected_components(const BinaryGrid& grid);

/// Tight half-open box around each component, translated from window-relative
/// cells into global grid coordinates. Components smaller than min_cells are
/// dropped.
std::vector<BBox> bounding_boxes(const std::vector<Component>& components,
                                 const CropWindow& window, int min_cells = 1);

/// Full per-robot pipeline: position the window on the robot, crop live and
/// prior, merge, subtract, extract components and emit global boxes.
LocalFrame process_frame(const BinaryGrid& live, const BinaryGrid& global_prior,
                         WorldPoint robot_pose, int robot_id, int min_blob_cells = 1);

}  // namespace sentinel
