#include <doctest.h>

#include "sentinel/errors.hpp"
#include "sentinel/grid.hpp"
#include "support/oracles.hpp"

using namespace sentinel;

namespace {

MapGeometry small_geom(int w, int h, double res = 0.05, WorldPoint origin = {0, 0}) {
  MapGeometry g;
  g.width_cells = w;
  g.height_cells = h;
  g.resolution = res;
  g.origin_world = origin;
  return g;
}

}  // namespace

TEST_CASE("threshold maps costs to binary occupancy") {
  Costmap map = Costmap::zeros(small_geom(3, 1));
  map.cells = {0, 50, 100};

  const BinaryGrid out = threshold(map, 50);
  CHECK(out.cells[0] == BinaryGrid::kFree);      // cost 0 < 50
  CHECK(out.cells[1] == BinaryGrid::kOccupied);  // cost == thresh
  CHECK(out.cells[2] == BinaryGrid::kOccupied);
  CHECK(out.geom == map.geom);
}

TEST_CASE("threshold of an all-zero costmap is all free") {
  const Costmap map = Costmap::zeros(small_geom(4, 4));
  for (int t : {1, 50, 100}) {
    const BinaryGrid out = threshold(map, t);
    for (auto c : out.cells) CHECK(c == BinaryGrid::kFree);
  }
}

TEST_CASE("threshold rejects out-of-range parameters") {
  const Costmap map = Costmap::zeros(small_geom(2, 2));
  CHECK_THROWS_AS(threshold(map, 0), InvalidParameterError);
  CHECK_THROWS_AS(threshold(map, 101), InvalidParameterError);
  CHECK_NOTHROW(threshold(map, 1));
  CHECK_NOTHROW(threshold(map, 100));
}

TEST_CASE("threshold output is binary for every cost value") {
  Costmap map = Costmap::zeros(small_geom(101, 1));
  for (int c = 0; c <= 100; ++c) map.cells[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(c);
  for (int t = 1; t <= 100; ++t) {
    const BinaryGrid out = threshold(map, t);
    for (auto c : out.cells) CHECK((c == 0 || c == 255));
  }
}

TEST_CASE("threshold is monotone: raising thresh never occupies more cells") {
  Rng rng(7);
  Costmap map = Costmap::zeros(small_geom(16, 16));
  for (auto& c : map.cells) c = static_cast<std::uint8_t>(rng.uniform_int(101));
  for (int t = 1; t < 100; ++t) {
    const BinaryGrid low = threshold(map, t);
    const BinaryGrid high = threshold(map, t + 1);
    for (std::size_t i = 0; i < low.cells.size(); ++i) {
      if (high.cells[i] == BinaryGrid::kOccupied) {
        CHECK(low.cells[i] == BinaryGrid::kOccupied);
      }
    }
  }
}

TEST_CASE("world_to_grid floors into the containing cell") {
  const MapGeometry geom = small_geom(160, 160, 0.05, {-1.0, -1.0});

  CHECK(world_to_grid({-1.0, -1.0}, geom) == GridPoint{0, 0});  // origin itself
  CHECK(world_to_grid({2.0, 1.0}, geom) == GridPoint{60, 40});
  // floor semantics for negatives: (-1.03 - (-1)) / 0.05 = -0.6 -> -1
  CHECK(world_to_grid({-1.03, -1.0}, geom) == GridPoint{-1, 0});
}

TEST_CASE("grid_to_world returns cell centers") {
  const MapGeometry unit = small_geom(4, 4, 1.0, {0.0, 0.0});
  const WorldPoint c = grid_to_world({0, 0}, unit);
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));

  const MapGeometry geom = small_geom(160, 160, 0.05, {-1.0, -1.0});
  const WorldPoint p = grid_to_world({60, 40}, geom);
  CHECK(p.x == doctest::Approx(2.025));
  CHECK(p.y == doctest::Approx(1.025));
}

TEST_CASE("world/grid round-trip holds for every in-bounds cell") {
  const MapGeometry geom = small_geom(40, 30, 0.05, {-1.7, 2.3});
  for (int y = 0; y < geom.height_cells; ++y) {
    for (int x = 0; x < geom.width_cells; ++x) {
      CHECK(world_to_grid(grid_to_world({x, y}, geom), geom) == GridPoint{x, y});
    }
  }
}

TEST_CASE("inflate radius 0 returns the input unchanged") {
  Rng rng(3);
  const BinaryGrid grid = oracles::random_grid(rng, 12, 9, 0.2, 0.05);
  const BinaryGrid out = inflate(grid, 0.0);
  CHECK(out.cells == grid.cells);
}

TEST_CASE("inflate by one cell width occupies the 4-neighborhood only") {
  BinaryGrid grid = BinaryGrid::filled(small_geom(7, 7, 0.05), BinaryGrid::kFree);
  grid.at({3, 3}) = BinaryGrid::kOccupied;

  const BinaryGrid out = inflate(grid, 0.05);
  int occupied = 0;
  for (auto c : out.cells) occupied += c == BinaryGrid::kOccupied;
  CHECK(occupied == 5);  // center + 4 orthogonal; diagonals are at r*sqrt(2) > r
  CHECK(out.occupied({3, 3}));
  CHECK(out.occupied({2, 3}));
  CHECK(out.occupied({4, 3}));
  CHECK(out.occupied({3, 2}));
  CHECK(out.occupied({3, 4}));
  CHECK(!out.occupied({2, 2}));
}

TEST_CASE("inflate of an all-free grid stays all free") {
  const BinaryGrid grid = BinaryGrid::filled(small_geom(9, 5, 0.05), BinaryGrid::kFree);
  const BinaryGrid out = inflate(grid, 0.3);
  for (auto c : out.cells) CHECK(c == BinaryGrid::kFree);
}

TEST_CASE("inflate matches the brute-force distance oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryGrid grid = oracles::random_grid(rng, 15, 12, 0.1, 0.05);
    const double radius = rng.uniform(0.0, 0.2);
    const BinaryGrid fast = inflate(grid, radius);
    const BinaryGrid slow = oracles::inflate_brute_force(grid, radius);
    CHECK(fast.cells == slow.cells);
  }
}

TEST_CASE("inflate is monotone in the radius") {
  Rng rng(13);
  const BinaryGrid grid = oracles::random_grid(rng, 20, 20, 0.05, 0.05);
  const BinaryGrid small = inflate(grid, 0.07);
  const BinaryGrid large = inflate(grid, 0.11);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    if (small.cells[i] == BinaryGrid::kOccupied) {
      CHECK(large.cells[i] == BinaryGrid::kOccupied);
    }
  }
}

TEST_CASE("inflate rejects negative radii") {
  const BinaryGrid grid = BinaryGrid::filled(small_geom(2, 2), BinaryGrid::kFree);
  CHECK_THROWS_AS(inflate(grid, -0.1), InvalidParameterError);
}
