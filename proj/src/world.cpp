#include "sentinel/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

constexpr double kWallThickness = 0.10;

// Closed rectangular wall ring with the given outer dimensions; gaps (if any)
// are cut afterwards by the map builders.
void add_ring(std::vector<WorldRect>& walls, double x0, double y0, double x1, double y1) {
  const double t = kWallThickness;
  walls.push_back({x0, y0, x1, y0 + t});          // bottom
  walls.push_back({x0, y1 - t, x1, y1});          // top
  walls.push_back({x0, y0 + t, x0 + t, y1 - t});  // left
  walls.push_back({x1 - t, y0 + t, x1, y1 - t});  // right
}

}  // namespace

WorldModel make_map1() {
  WorldModel world;
  world.ground = {-4.0, -4.0, 4.0, 4.0};
  add_ring(world.walls, -3.0, -3.0, 3.0, 3.0);
  world.interior = {-3.0 + kWallThickness, -3.0 + kWallThickness,
                    3.0 - kWallThickness, 3.0 - kWallThickness};
  world.patrol_diagonal = std::hypot(6.0, 6.0);
  return world;
}

WorldModel make_map2() {
  WorldModel world;
  world.ground = {-12.0, -12.0, 12.0, 12.0};
  const double t = kWallThickness;
  const double half_gap = 0.5;  // 1 m door openings

  world.walls.push_back({-10.0, -10.0, 10.0, -10.0 + t});  // bottom
  world.walls.push_back({-10.0, 10.0 - t, 10.0, 10.0});    // top
  // Left and right walls are split around door gaps centered at y = 0.
  world.walls.push_back({-10.0, -10.0 + t, -10.0 + t, -half_gap});
  world.walls.push_back({-10.0, half_gap, -10.0 + t, 10.0 - t});
  world.walls.push_back({10.0 - t, -10.0 + t, 10.0, -half_gap});
  world.walls.push_back({10.0 - t, half_gap, 10.0, 10.0 - t});

  world.exits.push_back({-10.0, -half_gap, -10.0 + t, half_gap});
  world.exits.push_back({10.0 - t, -half_gap, 10.0, half_gap});

  world.interior = {-10.0 + t, -10.0 + t, 10.0 - t, 10.0 - t};
  world.patrol_diagonal = std::hypot(20.0, 20.0);
  return world;
}

WorldModel load_arena(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open arena file " + path.string());

  WorldModel world;
  bool saw_ground = false, saw_interior = false, saw_diagonal = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::istringstream values(line.substr(eq + 1));

    const auto need_rect = [&](const char* what) {
      WorldRect r;
      if (!(values >> r.x_min >> r.y_min >> r.x_max >> r.y_max) ||
          r.x_min >= r.x_max || r.y_min >= r.y_max) {
        throw ParseError("arena field '" + std::string(what) + "' needs x0 y0 x1 y1 " +
                         "with positive extent (line " + std::to_string(line_no) + ")");
      }
      return r;
    };
    if (key == "ground") {
      world.ground = need_rect("ground");
      saw_ground = true;
    } else if (key == "wall") {
      world.walls.push_back(need_rect("wall"));
    } else if (key == "door") {
      world.exits.push_back(need_rect("door"));
    } else if (key == "interior") {
      world.interior = need_rect("interior");
      saw_interior = true;
    } else if (key == "diagonal") {
      if (!(values >> world.patrol_diagonal) || world.patrol_diagonal <= 0.0) {
        throw ParseError("arena field 'diagonal' must be a positive number (line " +
                         std::to_string(line_no) + ")");
      }
      saw_diagonal = true;
    } else if (!key.empty()) {
      throw ParseError("arena field '" + key + "' is not recognized (line " +
                       std::to_string(line_no) + ")");
    }
  }
  if (!saw_ground) throw ParseError("arena field 'ground' is missing");
  if (!saw_interior) world.interior = world.ground;
  if (!saw_diagonal) {
    world.patrol_diagonal = std::hypot(world.interior.width(), world.interior.height());
  }
  return world;
}

std::pair<BinaryGrid, BinaryGrid> build_global_maps(const WorldModel& world,
                                                    double resolution,
                                                    double global_inflation,
                                                    int thresh_global) {
  if (resolution <= 0.0) {
    throw InvalidParameterError("map resolution must be > 0");
  }
  MapGeometry geom;
  geom.resolution = resolution;
  geom.origin_world = {world.ground.x_min, world.ground.y_min};
  geom.width_cells = static_cast<int>(std::lround(world.ground.width() / resolution));
  geom.height_cells = static_cast<int>(std::lround(world.ground.height() / resolution));

  Costmap costs = Costmap::zeros(geom);
  for (const WorldRect& wall : world.walls) {
    // Every cell overlapping the slab with positive area becomes lethal.
    const auto span = [&](double lo, double hi, double origin, int cells) {
      const int first = std::max(
          0, static_cast<int>(std::floor((lo - origin) / resolution + 1e-9)));
      const int last = std::min(
          cells - 1, static_cast<int>(std::ceil((hi - origin) / resolution - 1e-9)) - 1);
      return std::pair<int, int>{first, last};
    };
    const auto [x0, x1] = span(wall.x_min, wall.x_max, geom.origin_world.x, geom.width_cells);
    const auto [y0, y1] = span(wall.y_min, wall.y_max, geom.origin_world.y, geom.height_cells);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        costs.at({x, y}) = 100;
      }
    }
  }

  BinaryGrid prior = threshold(costs, thresh_global);
  BinaryGrid inflated = inflate(prior, global_inflation);
  return {std::move(prior), std::move(inflated)};
}

double safe_distance(double diagonal_m, int robot_count) {
  if (robot_count < 1) {
    throw InvalidParameterError("robot count must be >= 1, got " +
                                std::to_string(robot_count));
  }
  if (diagonal_m <= 0.0) {
    throw InvalidParameterError("diagonal must be > 0, got " + std::to_string(diagonal_m));
  }
  return diagonal_m / (2.0 * robot_count);
}

}  // namespace sentinel
