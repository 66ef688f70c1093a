#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/fusion.hpp"
#include "sentinel/local_view.hpp"
#include "sentinel/metrics.hpp"
#include "sentinel/motion.hpp"
#include "sentinel/sensor.hpp"
#include "sentinel/world.hpp"

namespace sentinel {

/// Every knob of the simulation and detection pipeline in one place.
/// Defaults reproduce the desk-scale protocol.
struct SimParams {
  double resolution = 0.05;       // metres per grid cell
  int thresh_local = 70;          // local costmap binarization (kept strict)
  int thresh_global = 50;         // global map binarization
  double iou_threshold = 0.3;     // t for ally removal and fusion
  double robot_diameter = 0.21;   // di, metres
  double local_inflation = 0.17;  // local costmap decay radius; with thresh 70 this
                                  // occupies exactly one ring around each hit
  double global_inflation = 0.20; // prior map inflation, metres (> local effective)
  double robot_speed = 0.22;      // m/s
  double intruder_speed = 0.22;   // m/s
  double dt = 0.05;               // simulation step, seconds
  SensorSpec sensor;              // 360 beams, 2.5 m, 5 Hz, no noise
  double capture_radius = 0.5;    // metres
  PursuitConfig pursuit;
  double goal_staleness = 30.0;   // seconds before a patrol goal is refreshed
  double wall_clearance = 0.4;    // metres from occupied cells for patrol goals
  int min_blob_cells = 1;
  double box_side_min = 0.5;      // stationary intruder boxes, metres per side
  double box_side_max = 1.0;
  double disc_radius = 0.1;       // mobile intruder footprint, metres
};

/// A built, runnable world: entities plus the grids every frame consumes.
struct Scenario {
  WorldModel world;
  BinaryGrid prior;
  BinaryGrid inflated_prior;
  SimParams params;
  int local_w = 0;  // local window cells, 2 * max_range / resolution
  int local_l = 0;
};

/// Output of one sensor frame across all robots.
struct FrameResult {
  std::vector<LocalFrame> frames;  // per robot, roster order
  RobotRoster roster;              // detections after ally removal
  std::vector<Detection> fused;
};

/// Timestamped record for the event log (spawn/goal/caught/escaped).
struct Event {
  double t = 0.0;
  std::string type;
  int entity_id = 0;
  WorldPoint where;
};

/// Intruder entity ids start here; robot ids start at 0.
constexpr int kIntruderIdBase = 1000;

/// Wraps a world with its rasterized prior maps and derived window size.
Scenario build_scenario(WorldModel world, const SimParams& params);

/// map1, map2, or an arena file path.
WorldModel resolve_map(const std::string& selector);

/// Runs one full sensing cycle: rasterize, sweep every robot, run the local
/// pipeline, strip ally detections, fuse.
FrameResult sense_frame(Scenario& scenario, long frame_index);

/// Tight grid boxes of every active intruder footprint, roster order.
std::vector<BBox> truth_boxes(const WorldModel& world, const MapGeometry& geom);

/// Flag per active intruder: within max_range of some robot (center to center).
std::vector<char> in_range_flags(const WorldModel& world, double max_range);

/// Refreshes patrol goals (reached or stale) and keeps map-1-style wanderers
/// moving; appends goal events.
void update_patrols(Scenario& scenario, std::vector<Event>* events);

/// Entity placement used by the drivers, all drawn from the world rng with
/// footprint-aware spacing. Robots either sample free space (detection
/// protocol) or form a block at the arena center (labyrinth protocol).
void spawn_robots(Scenario& scenario, int count, std::vector<Event>* events);
void spawn_robots_center_block(Scenario& scenario, int count, std::vector<Event>* events);
void spawn_wandering_intruders(Scenario& scenario, int mobile, int stationary,
                               std::vector<Event>* events);
void spawn_escaping_intruders(Scenario& scenario, int count, double min_escape_distance,
                              std::vector<Event>* events);

struct DetectionTrialConfig {
  SimParams params;
  std::string map = "map1";  // map1, map2, or an arena file path
  int robots = 1;
  int mobile_intruders = 5;
  int stationary_intruders = 3;
  long frames = 1999;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;   // empty: keep everything in memory
  std::filesystem::path dump_dir;  // empty: no per-frame grid dumps
};

/// Map 1 protocol: robots patrol, intruders wander, every sensor frame is
/// scored against ground truth. Writes scores.csv, detections.csv,
/// events.log and the map files when out_dir is set.
TrialMetrics run_detection_trial(const DetectionTrialConfig& cfg);

struct CampaignConfig {
  SimParams params;
  std::vector<int> robot_counts{1, 2, 3, 4, 5};
  std::vector<int> intruder_counts{1, 2, 3, 4, 5};
  int trials = 20;
  double time_cap = 240.0;  // simulated seconds per trial
  double min_escape_distance = 12.0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::filesystem::path out_dir;
  bool event_logs = false;
};

struct CampaignTrialRecord {
  int n_intruders = 0;
  int n_robots = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int caught = 0;
  int total = 0;
  double rate = 0.0;
};

struct CampaignResult {
  std::vector<CampaignCell> cells;  // intruder-major over the configured counts
  std::vector<CampaignTrialRecord> records;
};

/// Map 2 protocol: per (intruders, robots) cell, repeated seeded trials that
/// end when every intruder is caught or escaped, or the time cap passes.
/// Writes campaign.csv, campaign_means.csv and success_rates.svg when
/// out_dir is set. Trials run concurrently when jobs > 1; outputs are merged
/// deterministically.
CampaignResult run_labyrinth_campaign(const CampaignConfig& cfg);

}  // namespace sentinel
