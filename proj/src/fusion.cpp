#include "sentinel/fusion.hpp"

#include <cmath>
#include <string>

#include "sentinel/errors.hpp"
#include "sentinel/grid.hpp"

namespace sentinel {

double iou(const BBox& b1, const BBox& b2) {
  const long long inter = intersection_area(b1, b2);
  if (inter == 0) return 0.0;
  const long long uni = b1.area() + b2.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BBox ally_bbox(WorldPoint pose, double diameter_m, const MapGeometry& geom) {
  if (diameter_m <= 0.0) {
    throw InvalidParameterError("robot diameter must be > 0, got " +
                                std::to_string(diameter_m));
  }
  const GridPoint cell = world_to_grid(pose, geom);
  if (!geom.in_bounds(cell)) {
    throw InvalidParameterError("ally pose maps outside the grid");
  }
  const int side = static_cast<int>(std::ceil(diameter_m / geom.resolution - 1e-9));
  const int half = side / 2;
  return BBox{cell.x - half, cell.y - half, cell.x - half + side, cell.y - half + side};
}

RobotRoster remove_ally_detections(RobotRoster roster, const FusionConfig& cfg,
                                   const MapGeometry& geom) {
  for (const RosterRobot& ally : roster) {
    const BBox footprint = ally_bbox(ally.pose, cfg.robot_diameter, geom);
    for (RosterRobot& other : roster) {
      if (other.id == ally.id) continue;
      for (std::size_t k = 0; k < other.detections.size(); ++k) {
        if (iou(footprint, other.detections[k].box) >= cfg.iou_threshold) {
          other.detections.erase(other.detections.begin() +
                                 static_cast<std::ptrdiff_t>(k));
          break;  // one removal per (ally, other) pair
        }
      }
    }
  }
  return roster;
}

std::vector<Detection> fuse_detections(const std::vector<Detection>& first,
                                       const std::vector<Detection>& second,
                                       double iou_threshold) {
  std::vector<Detection> fused = second;
  for (const Detection& candidate : first) {
    bool overlapped = false;
    // Scan the original second list; replacements land in fused at the same
    // index, so a later candidate still compares against the original entry.
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (iou(candidate.box, second[j].box) >= iou_threshold) {
        if (candidate.box.area() > second[j].box.area()) {
          fused[j] = candidate;
        }
        overlapped = true;
        break;
      }
    }
    if (!overlapped) {
      fused.push_back(candidate);
    }
  }
  return fused;
}

namespace {

std::vector<Detection> merge_range(const RobotRoster& roster, std::size_t left,
                                   std::size_t right, double iou_threshold) {
  if (left == right) return roster[left].detections;
  const std::size_t mid = (left + right) / 2;
  const std::vector<Detection> low = merge_range(roster, left, mid, iou_threshold);
  const std::vector<Detection> high = merge_range(roster, mid + 1, right, iou_threshold);
  return fuse_detections(high, low, iou_threshold);
}

}  // namespace

std::vector<Detection> merge_all(const RobotRoster& roster, double iou_threshold) {
  if (roster.empty()) {
    throw InvalidParameterError("merge_all: roster is empty");
  }
  return merge_range(roster, 0, roster.size() - 1, iou_threshold);
}

}  // namespace sentinel
