#include "sentinel/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sentinel/errors.hpp"
#include "sentinel/planner.hpp"

namespace sentinel {

namespace {

/// Moves a pose along its waypoint queue by up to travel metres, consuming
/// reached waypoints. Returns the new heading (unchanged when idle).
double follow_path(WorldPoint& pose, double heading, std::deque<WorldPoint>& path,
                   double travel) {
  while (travel > 1e-12 && !path.empty()) {
    const WorldPoint target = path.front();
    const double d = distance(pose, target);
    if (d < 1e-9) {
      path.pop_front();
      continue;
    }
    heading = std::atan2(target.y - pose.y, target.x - pose.x);
    if (d <= travel) {
      pose = target;
      travel -= d;
      path.pop_front();
    } else {
      pose.x += travel / d * (target.x - pose.x);
      pose.y += travel / d * (target.y - pose.y);
      travel = 0.0;
    }
  }
  return heading;
}

}  // namespace

void step(WorldModel& world, double dt) {
  if (dt <= 0.0) {
    throw InvalidParameterError("step: dt must be > 0");
  }

  for (RobotState& robot : world.robots) {
    const WorldPoint before = robot.pose;
    robot.heading = follow_path(robot.pose, robot.heading, robot.path,
                                robot.speed_limit * dt);
    if (world.inside_wall(robot.pose)) {
      robot.pose = before;  // collision clamp; replan happens at goal refresh
      robot.path.clear();
    }
    robot.goal_age += dt;
    if (robot.mode == RobotMode::pursuing) robot.pursuit_staleness += dt;
  }

  for (IntruderState& intruder : world.intruders) {
    if (!intruder.active() || !intruder.mobile) continue;
    const WorldPoint before = intruder.pose;
    follow_path(intruder.pose, 0.0, intruder.path, intruder.speed * dt);
    if (world.inside_wall(intruder.pose)) {
      intruder.pose = before;
      intruder.path.clear();
    }
    if (intruder.escape_goal && distance(intruder.pose, *intruder.escape_goal) <= 0.2) {
      intruder.escaped = true;
      intruder.path.clear();
    }
  }

  world.clock += dt;
}

bool route_to(std::deque<WorldPoint>& path, WorldPoint from, WorldPoint to,
              const BinaryGrid& inflated_prior) {
  path.clear();
  try {
    const auto cells = plan_path(inflated_prior, world_to_grid(from, inflated_prior.geom),
                                 world_to_grid(to, inflated_prior.geom));
    for (const GridPoint& c : cells) {
      path.push_back(grid_to_world(c, inflated_prior.geom));
    }
    if (!path.empty()) path.back() = to;  // land on the exact goal point
    return true;
  } catch (const Error&) {
    return false;
  }
}

void dispatch_pursuit(WorldModel& world, const std::vector<Detection>& fused,
                      const BinaryGrid& inflated_prior, const PursuitConfig& cfg) {
  const MapGeometry& geom = inflated_prior.geom;
  std::vector<WorldPoint> centroids;
  centroids.reserve(fused.size());
  for (const Detection& det : fused) {
    centroids.push_back(grid_to_world({(det.box.x1 + det.box.x2) / 2,
                                       (det.box.y1 + det.box.y2) / 2},
                                      geom));
  }
  std::vector<char> claimed(centroids.size(), 0);

  // Refresh running pursuits with the nearest detection still near the goal.
  for (RobotState& robot : world.robots) {
    if (robot.mode != RobotMode::pursuing || !robot.patrol_goal) continue;
    int best = -1;
    double best_d = cfg.associate_radius;
    for (std::size_t i = 0; i < centroids.size(); ++i) {
      if (claimed[i]) continue;
      const double d = distance(centroids[i], *robot.patrol_goal);
      if (d <= best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      claimed[static_cast<std::size_t>(best)] = 1;
      robot.patrol_goal = centroids[static_cast<std::size_t>(best)];
      robot.pursuit_staleness = 0.0;
      route_to(robot.path, robot.pose, *robot.patrol_goal, inflated_prior);
    }
  }

  // Unclaimed detections grab idle robots, globally nearest pair first.
  while (true) {
    int best_det = -1, best_robot = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centroids.size(); ++i) {
      if (claimed[i]) continue;
      for (std::size_t r = 0; r < world.robots.size(); ++r) {
        if (world.robots[r].mode != RobotMode::patrolling) continue;
        const double d = distance(centroids[i], world.robots[r].pose);
        if (d < best_d) {
          best_d = d;
          best_det = static_cast<int>(i);
          best_robot = static_cast<int>(r);
        }
      }
    }
    if (best_det < 0) break;
    claimed[static_cast<std::size_t>(best_det)] = 1;
    RobotState& robot = world.robots[static_cast<std::size_t>(best_robot)];
    robot.mode = RobotMode::pursuing;
    robot.patrol_goal = centroids[static_cast<std::size_t>(best_det)];
    robot.pursuit_staleness = 0.0;
    robot.goal_age = 0.0;
    route_to(robot.path, robot.pose, *robot.patrol_goal, inflated_prior);
  }

  // Give up on targets that vanished or were reached without a refresh.
  for (RobotState& robot : world.robots) {
    if (robot.mode != RobotMode::pursuing) continue;
    const bool arrived = robot.path.empty() && robot.patrol_goal &&
                         distance(robot.pose, *robot.patrol_goal) <= cfg.reach_distance;
    if (robot.pursuit_staleness > cfg.timeout || arrived) {
      robot.mode = RobotMode::patrolling;
      robot.patrol_goal.reset();
      robot.path.clear();
      robot.pursuit_staleness = 0.0;
    }
  }
}

void check_captures(WorldModel& world, double capture_radius) {
  if (capture_radius < 0.0) {
    throw InvalidParameterError("check_captures: capture radius must be >= 0");
  }
  for (IntruderState& intruder : world.intruders) {
    if (!intruder.active()) continue;
    for (const RobotState& robot : world.robots) {
      if (distance(intruder.pose, robot.pose) <= capture_radius) {
        intruder.caught = true;
        intruder.path.clear();
        break;
      }
    }
  }
}

}  // namespace sentinel
