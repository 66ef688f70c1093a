#pragma once

#include <vector>

#include "sentinel/geometry.hpp"

namespace sentinel {

/// One detection box in global grid coordinates, tagged with its reporter.
struct Detection {
  BBox box;
  int source_robot = 0;
  long frame = 0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Per-robot snapshot handed to the fusion center: pose plus the detection
/// list accumulated this frame.
struct RosterRobot {
  int id = 0;
  WorldPoint pose;
  std::vector<Detection> detections;
};

/// Ordered list of robot snapshots; order is stable for a frame (the merge
/// tree indexes it by position).
using RobotRoster = std::vector<RosterRobot>;

struct FusionConfig {
  double iou_threshold = 0.3;   // boxes at or above this overlap are one object
  double robot_diameter = 0.21; // metres; footprint circle of an ally robot
};

/// Intersection area over union area on half-open cell boxes. 0 when
/// disjoint, 1 for identical boxes, symmetric.
double iou(const BBox& b1, const BBox& b2);

/// Square box of ceil(diameter / resolution) cells centered on the cell
/// containing pose: the area an ally covers at its current position.
BBox ally_bbox(WorldPoint pose, double diameter_m, const MapGeometry& geom);

/// For every robot i, removes from every other robot j's list the first
/// detection whose IoU with i's footprint box reaches the threshold — at
/// most one removal per (i, j) pair. Deletions persist for the frame.
RobotRoster remove_ally_detections(RobotRoster roster, const FusionConfig& cfg,
                                   const MapGeometry& geom);

/// Merges two detection lists: every first-list element either replaces the
/// first second-list element it overlaps (if strictly larger) or is appended
/// (if it overlaps none). Output elements always come from the inputs.
std::vector<Detection> fuse_detections(const std::vector<Detection>& first,
                                       const std::vector<Detection>& second,
                                       double iou_threshold);

/// Divide-and-conquer merge of every robot's detection list into one global
/// list, combining halves as fuse_detections(right, left).
std::vector<Detection> merge_all(const RobotRoster& roster, double iou_threshold);

}  // namespace sentinel
