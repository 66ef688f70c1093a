#include "sentinel/local_view.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

void require_same_shape(const BinaryGrid& a, const BinaryGrid& b, const char* op) {
  if (a.geom.width_cells != b.geom.width_cells ||
      a.geom.height_cells != b.geom.height_cells) {
    throw ShapeError(std::string(op) + ": grids are " +
                     std::to_string(a.geom.width_cells) + "x" +
                     std::to_string(a.geom.height_cells) + " vs " +
                     std::to_string(b.geom.width_cells) + "x" +
                     std::to_string(b.geom.height_cells));
  }
}

}  // namespace

std::pair<GridPoint, GridPoint> crop_coords(GridPoint robot_cell, int local_w, int local_l) {
  if (local_w < 0 || local_l < 0) {
    throw InvalidParameterError("local window extents must be >= 0");
  }
  // The robot sits at index (w/2, l/2) of the window, so the window always
  // spans exactly local_w x local_l cells whatever the parity.
  const GridPoint tl{robot_cell.x - local_w / 2, robot_cell.y - local_l / 2};
  const GridPoint br{tl.x + local_w, tl.y + local_l};
  return {tl, br};
}

CropWindow clamp_crop(GridPoint tl, GridPoint br, int global_w, int global_l,
                      int local_w, int local_l) {
  if (br.x - tl.x != local_w || br.y - tl.y != local_l) {
    throw InvalidParameterError("clamp_crop: window span does not match local dims");
  }

  CropWindow w;
  w.lmap_tl = {0, 0};
  w.lmap_br = {local_w, local_l};
  w.gmap_tl = tl;
  w.gmap_br = br;

  if (tl.x < 0) {
    w.lmap_tl.x = std::abs(tl.x);
    w.gmap_tl.x = 0;
  }
  if (tl.y < 0) {
    w.lmap_tl.y = std::abs(tl.y);
    w.gmap_tl.y = 0;
  }
  if (br.x > global_w) {
    w.lmap_br.x = local_w - (br.x - global_w);
    w.gmap_br.x = global_w;
  }
  if (br.y > global_l) {
    w.lmap_br.y = local_l - (br.y - global_l);
    w.gmap_br.y = global_l;
  }

  if (w.gmap_tl.x >= w.gmap_br.x || w.gmap_tl.y >= w.gmap_br.y) {
    throw EmptyWindowError("crop window lies outside the global grid (robot off-map?)");
  }
  return w;
}

BinaryGrid crop(const BinaryGrid& grid, GridPoint tl, GridPoint br) {
  if (tl.x < 0 || tl.y < 0 || br.x > grid.geom.width_cells ||
      br.y > grid.geom.height_cells || tl.x > br.x || tl.y > br.y) {
    throw InvalidParameterError("crop rectangle out of grid bounds");
  }
  BinaryGrid out;
  out.geom.width_cells = br.x - tl.x;
  out.geom.height_cells = br.y - tl.y;
  out.geom.resolution = grid.geom.resolution;
  out.geom.origin_world = {grid.geom.origin_world.x + tl.x * grid.geom.resolution,
                           grid.geom.origin_world.y + tl.y * grid.geom.resolution};
  out.cells.resize(out.geom.cell_count());
  for (int y = 0; y < out.geom.height_cells; ++y) {
    const auto* src = &grid.cells[grid.geom.index({tl.x, tl.y + y})];
    std::copy(src, src + out.geom.width_cells, &out.cells[out.geom.index({0, y})]);
  }
  return out;
}

BinaryGrid or_merge(const BinaryGrid& live, const BinaryGrid& prior_crop) {
  require_same_shape(live, prior_crop, "or_merge");
  BinaryGrid out = live;
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    out.cells[i] = live.cells[i] | prior_crop.cells[i];
  }
  return out;
}

BinaryGrid abs_diff(const BinaryGrid& live, const BinaryGrid& merged) {
  require_same_shape(live, merged, "abs_diff");
  BinaryGrid out = live;
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    out.cells[i] = static_cast<std::uint8_t>(
        std::abs(int(live.cells[i]) - int(merged.cells[i])));
  }
  return out;
}

std::vector<Component> connected_components(const BinaryGrid& grid) {
  const int w = grid.geom.width_cells;
  const int h = grid.geom.height_cells;
  std::vector<Component> components;
  std::vector<char> visited(grid.cells.size(), 0);
  std::vector<GridPoint> stack;

  // Row-major scan guarantees components come out ordered by their smallest
  // row-major cell index.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = grid.geom.index({x, y});
      if (grid.cells[idx] != 255 || visited[idx]) continue;

      Component comp;
      stack.push_back({x, y});
      visited[idx] = 1;
      while (!stack.empty()) {
        const GridPoint c = stack.back();
        stack.pop_back();
        comp.push_back(c);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const GridPoint n{c.x + dx, c.y + dy};
            if (!grid.geom.in_bounds(n)) continue;
            const std::size_t nidx = grid.geom.index(n);
            if (grid.cells[nidx] == 255 && !visited[nidx]) {
              visited[nidx] = 1;
              stack.push_back(n);
            }
          }
        }
      }
      std::sort(comp.begin(), comp.end(), [&](GridPoint a, GridPoint b) {
        return grid.geom.index(a) < grid.geom.index(b);
      });
      components.push_back(std::move(comp));
    }
  }
  return components;
}

std::vector<BBox> bounding_boxes(const std::vector<Component>& components,
                                 const CropWindow& window, int min_cells) {
  // Component cells are window-relative; cell (0,0) of the window sits at
  // gmap_tl in the global grid, so the global translation is +gmap_tl.
  std::vector<BBox> boxes;
  for (const Component& comp : components) {
    if (comp.empty() || static_cast<int>(comp.size()) < min_cells) continue;
    int min_x = comp[0].x, max_x = comp[0].x;
    int min_y = comp[0].y, max_y = comp[0].y;
    for (const GridPoint& c : comp) {
      min_x = std::min(min_x, c.x);
      max_x = std::max(max_x, c.x);
      min_y = std::min(min_y, c.y);
      max_y = std::max(max_y, c.y);
    }
    boxes.push_back(BBox{min_x + window.gmap_tl.x, min_y + window.gmap_tl.y,
                         max_x + 1 + window.gmap_tl.x, max_y + 1 + window.gmap_tl.y});
  }
  return boxes;
}

LocalFrame process_frame(const BinaryGrid& live, const BinaryGrid& global_prior,
                         WorldPoint robot_pose, int robot_id, int min_blob_cells) {
  const GridPoint robot_cell = world_to_grid(robot_pose, global_prior.geom);
  const auto [tl, br] =
      crop_coords(robot_cell, live.geom.width_cells, live.geom.height_cells);
  const CropWindow window =
      clamp_crop(tl, br, global_prior.geom.width_cells, global_prior.geom.height_cells,
                 live.geom.width_cells, live.geom.height_cells);

  LocalFrame frame;
  frame.robot_id = robot_id;
  frame.window = window;
  frame.live = crop(live, window.lmap_tl, window.lmap_br);
  frame.prior_crop = crop(global_prior, window.gmap_tl, window.gmap_br);
  frame.merged = or_merge(frame.live, frame.prior_crop);
  frame.difference = abs_diff(frame.live, frame.merged);
  frame.boxes = bounding_boxes(connected_components(frame.difference), window, min_blob_cells);
  return frame;
}

}  // namespace sentinel
