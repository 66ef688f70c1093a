#include <doctest.h>

#include <algorithm>
#include <set>

#include "sentinel/errors.hpp"
#include "sentinel/local_view.hpp"
#include "support/oracles.hpp"

using namespace sentinel;

namespace {

std::set<std::pair<int, int>> cell_set(const Component& comp) {
  std::set<std::pair<int, int>> s;
  for (const GridPoint& c : comp) s.insert({c.x, c.y});
  return s;
}

CropWindow identity_window(int w, int l, GridPoint gmap_tl = {0, 0}) {
  return CropWindow{{0, 0}, {w, l}, gmap_tl, {gmap_tl.x + w, gmap_tl.y + l}};
}

}  // namespace

TEST_CASE("crop_coords centers the robot in the window") {
  CHECK(crop_coords({100, 100}, 100, 100) ==
        std::pair<GridPoint, GridPoint>{{50, 50}, {150, 150}});
  CHECK(crop_coords({0, 0}, 100, 100) ==
        std::pair<GridPoint, GridPoint>{{-50, -50}, {50, 50}});
  CHECK(crop_coords({7, 9}, 0, 0) == std::pair<GridPoint, GridPoint>{{7, 9}, {7, 9}});
}

TEST_CASE("crop_coords keeps the exact window span for odd extents") {
  const auto [tl, br] = crop_coords({10, 10}, 101, 7);
  CHECK(br.x - tl.x == 101);
  CHECK(br.y - tl.y == 7);
  CHECK(tl == GridPoint{10 - 50, 10 - 3});
}

TEST_CASE("clamp_crop passes a fully interior window through") {
  const CropWindow w = clamp_crop({50, 50}, {150, 150}, 400, 400, 100, 100);
  CHECK(w.lmap_tl == GridPoint{0, 0});
  CHECK(w.lmap_br == GridPoint{100, 100});
  CHECK(w.gmap_tl == GridPoint{50, 50});
  CHECK(w.gmap_br == GridPoint{150, 150});
}

TEST_CASE("clamp_crop folds a negative corner into the local offset") {
  const CropWindow w = clamp_crop({-10, 20}, {90, 120}, 400, 400, 100, 100);
  CHECK(w.lmap_tl.x == 10);
  CHECK(w.gmap_tl.x == 0);
  CHECK(w.lmap_tl.y == 0);
  CHECK(w.gmap_tl.y == 20);
}

TEST_CASE("clamp_crop shrinks the local extent by the overshoot") {
  const int global_w = 400;
  const CropWindow w = clamp_crop({global_w - 93, 100}, {global_w + 7, 200}, global_w, 400,
                                  100, 100);
  CHECK(w.lmap_br.x == 93);
  CHECK(w.gmap_br.x == global_w);
}

TEST_CASE("clamp_crop rejects windows that miss the grid entirely") {
  CHECK_THROWS_AS(clamp_crop({500, 500}, {600, 600}, 400, 400, 100, 100),
                  EmptyWindowError);
  CHECK_THROWS_AS(clamp_crop({-200, 10}, {-100, 110}, 400, 400, 100, 100),
                  EmptyWindowError);
  // Window span must match the declared local dimensions.
  CHECK_THROWS_AS(clamp_crop({0, 0}, {90, 100}, 400, 400, 100, 100),
                  InvalidParameterError);
}

TEST_CASE("clamp_crop windows stay consistent over random poses") {
  Rng rng(21);
  int clamped_cases = 0, larger_than_global = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int global_w = 1 + static_cast<int>(rng.uniform_int(120));
    const int global_l = 1 + static_cast<int>(rng.uniform_int(120));
    const int local_w = 1 + static_cast<int>(rng.uniform_int(160));
    const int local_l = 1 + static_cast<int>(rng.uniform_int(160));
    if (local_w > global_w || local_l > global_l) ++larger_than_global;
    const GridPoint center{static_cast<int>(rng.uniform_int(400)) - 140,
                           static_cast<int>(rng.uniform_int(400)) - 140};
    const auto [tl, br] = crop_coords(center, local_w, local_l);

    const bool misses = tl.x >= global_w || tl.y >= global_l || br.x <= 0 || br.y <= 0;
    if (misses) {
      CHECK_THROWS_AS(clamp_crop(tl, br, global_w, global_l, local_w, local_l),
                      EmptyWindowError);
      continue;
    }
    const CropWindow w = clamp_crop(tl, br, global_w, global_l, local_w, local_l);
    if (w.lmap_tl.x != 0 || w.lmap_tl.y != 0 || w.lmap_br.x != local_w ||
        w.lmap_br.y != local_l) {
      ++clamped_cases;
    }
    // Equal spans.
    CHECK(w.gmap_br.x - w.gmap_tl.x == w.lmap_br.x - w.lmap_tl.x);
    CHECK(w.gmap_br.y - w.gmap_tl.y == w.lmap_br.y - w.lmap_tl.y);
    // Positive spans, in-bounds corners.
    CHECK(w.gmap_tl.x >= 0);
    CHECK(w.gmap_tl.y >= 0);
    CHECK(w.gmap_br.x <= global_w);
    CHECK(w.gmap_br.y <= global_l);
    CHECK(w.lmap_tl.x >= 0);
    CHECK(w.lmap_tl.y >= 0);
    CHECK(w.lmap_br.x <= local_w);
    CHECK(w.lmap_br.y <= local_l);
    CHECK(w.gmap_tl.x < w.gmap_br.x);
    CHECK(w.gmap_tl.y < w.gmap_br.y);
  }
  CHECK(clamped_cases > 100);       // boundary branches actually exercised
  CHECK(larger_than_global > 100);  // including local grids larger than global
}

TEST_CASE("or_merge keeps only jointly occupied cells") {
  BinaryGrid a = BinaryGrid::filled({2, 2, 1.0, {0, 0}}, BinaryGrid::kFree);
  BinaryGrid b = a;
  a.at({0, 0}) = BinaryGrid::kOccupied;
  b.at({0, 0}) = BinaryGrid::kOccupied;
  a.at({1, 0}) = BinaryGrid::kOccupied;  // occupied only in a

  const BinaryGrid c = or_merge(a, b);
  CHECK(c.at({0, 0}) == BinaryGrid::kOccupied);
  CHECK(c.at({1, 0}) == BinaryGrid::kFree);
  CHECK(c.at({0, 1}) == BinaryGrid::kFree);

  CHECK(or_merge(a, a).cells == a.cells);  // idempotent
}

TEST_CASE("or_merge and abs_diff reject shape mismatches") {
  const BinaryGrid a = BinaryGrid::filled({2, 2, 1.0, {0, 0}}, BinaryGrid::kFree);
  const BinaryGrid b = BinaryGrid::filled({3, 2, 1.0, {0, 0}}, BinaryGrid::kFree);
  CHECK_THROWS_AS(or_merge(a, b), ShapeError);
  CHECK_THROWS_AS(abs_diff(a, b), ShapeError);
}

TEST_CASE("abs_diff isolates cells occupied live but free in the merge") {
  BinaryGrid a = BinaryGrid::filled({1, 1, 1.0, {0, 0}}, BinaryGrid::kOccupied);
  BinaryGrid c = BinaryGrid::filled({1, 1, 1.0, {0, 0}}, BinaryGrid::kFree);
  CHECK(abs_diff(a, c).cells[0] == 255);
  CHECK(abs_diff(a, a).cells[0] == 0);
  CHECK(abs_diff(c, c).cells[0] == 0);
}

TEST_CASE("background subtraction matches the per-cell truth table") {
  // Exhaustive over the four (live, prior) cell combinations.
  for (std::uint8_t live_cell : {0, 255}) {
    for (std::uint8_t prior_cell : {0, 255}) {
      BinaryGrid a = BinaryGrid::filled({1, 1, 1.0, {0, 0}}, live_cell);
      BinaryGrid b = BinaryGrid::filled({1, 1, 1.0, {0, 0}}, prior_cell);
      const BinaryGrid d = abs_diff(a, or_merge(a, b));
      const bool foreground = live_cell == 0 && prior_cell == 255;
      CHECK(d.cells[0] == (foreground ? 255 : 0));
    }
  }

  // And against a brute per-cell oracle on random grids.
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryGrid a = oracles::random_grid(rng, 17, 13, 0.4);
    const BinaryGrid b = oracles::random_grid(rng, 17, 13, 0.4);
    const BinaryGrid d = abs_diff(a, or_merge(a, b));
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
      const bool foreground = a.cells[i] == 0 && b.cells[i] == 255;
      CHECK(d.cells[i] == (foreground ? 255 : 0));
    }
  }
}

TEST_CASE("connected_components on an all-zero grid is empty") {
  const BinaryGrid grid = BinaryGrid::filled({8, 8, 1.0, {0, 0}}, 0);
  CHECK(connected_components(grid).empty());
}

TEST_CASE("corner-touching cells join one component, separated cells do not") {
  BinaryGrid grid = BinaryGrid::filled({8, 8, 1.0, {0, 0}}, 0);
  grid.at({2, 2}) = 255;
  grid.at({3, 3}) = 255;  // shares only a corner
  CHECK(connected_components(grid).size() == 1);

  grid.at({3, 3}) = 0;
  grid.at({4, 2}) = 255;  // two columns apart
  CHECK(connected_components(grid).size() == 2);
}

TEST_CASE("connected_components matches the propagation oracle on random grids") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform_int(64));
    const int h = 1 + static_cast<int>(rng.uniform_int(64));
    const BinaryGrid grid = oracles::random_grid(rng, w, h, rng.uniform(0.05, 0.6));

    const auto got = connected_components(grid);
    const auto expected = oracles::components_by_propagation(grid);

    REQUIRE(got.size() == expected.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(cell_set(got[i]) == cell_set(expected[i]));
      total += got[i].size();
    }
    std::size_t foreground = 0;
    for (auto c : grid.cells) foreground += c == 255;
    CHECK(total == foreground);  // partition covers all foreground
  }
}

TEST_CASE("bounding_boxes produce tight translated rectangles") {
  const CropWindow plain = identity_window(20, 20);
  CHECK(bounding_boxes({{{5, 7}}}, plain) == std::vector<BBox>{{5, 7, 6, 8}});

  const Component l_shape = {{1, 2}, {1, 3}, {1, 4}, {2, 2}, {3, 2}};
  CHECK(bounding_boxes({l_shape}, plain) == std::vector<BBox>{{1, 2, 4, 5}});

  const CropWindow shifted = identity_window(20, 20, {100, 50});
  CHECK(bounding_boxes({l_shape}, shifted) == std::vector<BBox>{{101, 52, 104, 55}});
}

TEST_CASE("every box is tight around its component") {
  Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const BinaryGrid grid = oracles::random_grid(rng, 30, 30, 0.2);
    const auto comps = connected_components(grid);
    const CropWindow window = identity_window(30, 30, {7, 9});
    const auto boxes = bounding_boxes(comps, window);
    REQUIRE(boxes.size() == comps.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const BBox& box = boxes[i];
      bool on_left = false, on_right = false, on_top = false, on_bottom = false;
      for (const GridPoint& c : comps[i]) {
        const GridPoint g = c + window.gmap_tl;
        CHECK(g.x >= box.x1);
        CHECK(g.x < box.x2);
        CHECK(g.y >= box.y1);
        CHECK(g.y < box.y2);
        on_left |= g.x == box.x1;
        on_right |= g.x == box.x2 - 1;
        on_bottom |= g.y == box.y1;
        on_top |= g.y == box.y2 - 1;
      }
      CHECK(on_left);
      CHECK(on_right);
      CHECK(on_bottom);
      CHECK(on_top);
    }
  }
}

TEST_CASE("bounding_boxes honors the minimum component size") {
  const CropWindow window = identity_window(10, 10);
  const std::vector<Component> comps = {{{1, 1}}, {{3, 3}, {3, 4}}};
  CHECK(bounding_boxes(comps, window, 2).size() == 1);
  CHECK(bounding_boxes(comps, window, 1).size() == 2);
}

namespace {

struct PipelineScene {
  BinaryGrid prior;  // 40x40 global
  BinaryGrid live;   // 20x20 window anchored at (10,10)
  WorldPoint pose;
};

// Global grid with a vertical wall at column 15; the live view covers cells
// [10,30) x [10,30) around the robot at cell (20,20) and sees the same wall.
PipelineScene make_scene() {
  PipelineScene scene;
  scene.prior = BinaryGrid::filled({40, 40, 0.05, {0, 0}}, BinaryGrid::kFree);
  for (int y = 0; y < 40; ++y) scene.prior.at({15, y}) = BinaryGrid::kOccupied;

  scene.live.geom = {20, 20, 0.05, {0.5, 0.5}};
  scene.live.cells.assign(scene.live.geom.cell_count(), BinaryGrid::kFree);
  for (int y = 0; y < 20; ++y) scene.live.at({5, y}) = BinaryGrid::kOccupied;  // the wall

  scene.pose = grid_to_world({20, 20}, scene.prior.geom);
  return scene;
}

}  // namespace

TEST_CASE("process_frame sees nothing when the world matches the prior") {
  const PipelineScene scene = make_scene();
  const LocalFrame frame = process_frame(scene.live, scene.prior, scene.pose, 0);
  CHECK(frame.boxes.empty());
  CHECK(frame.live.geom.width_cells == 20);
  CHECK(frame.difference.geom.width_cells == 20);
}

TEST_CASE("process_frame boxes an intruder blob in global coordinates") {
  PipelineScene scene = make_scene();
  // 2x2 blob at global cells (24..25, 18..19) = live cells (14..15, 8..9).
  for (int y = 8; y <= 9; ++y)
    for (int x = 14; x <= 15; ++x) scene.live.at({x, y}) = BinaryGrid::kOccupied;

  const LocalFrame frame = process_frame(scene.live, scene.prior, scene.pose, 3);
  REQUIRE(frame.boxes.size() == 1);
  CHECK(frame.boxes[0] == BBox{24, 18, 26, 20});
  CHECK(frame.robot_id == 3);

  // The box's cells map back onto foreground cells of the difference grid.
  for (int y = frame.boxes[0].y1; y < frame.boxes[0].y2; ++y) {
    for (int x = frame.boxes[0].x1; x < frame.boxes[0].x2; ++x) {
      CHECK(frame.difference.at({x - frame.window.gmap_tl.x,
                                 y - frame.window.gmap_tl.y}) == 255);
    }
  }
}

TEST_CASE("an intruder standing on a prior wall cell is absorbed") {
  PipelineScene scene = make_scene();
  // The blob coincides with wall cells (already occupied in prior and live).
  scene.live.at({5, 8}) = BinaryGrid::kOccupied;
  scene.live.at({5, 9}) = BinaryGrid::kOccupied;
  const LocalFrame frame = process_frame(scene.live, scene.prior, scene.pose, 0);
  CHECK(frame.boxes.empty());
}

TEST_CASE("process_frame propagates the off-map error") {
  const PipelineScene scene = make_scene();
  CHECK_THROWS_AS(process_frame(scene.live, scene.prior, {-10.0, -10.0}, 0),
                  EmptyWindowError);
}
