#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sentinel/errors.hpp"
#include "sentinel/experiments.hpp"

using namespace sentinel;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sentinel_exp_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimParams fast_params() {
  SimParams p;
  return p;
}

}  // namespace

TEST_CASE("a trial with no intruders never scores fp or fn") {
  DetectionTrialConfig cfg;
  cfg.params = fast_params();
  cfg.robots = 2;
  cfg.mobile_intruders = 0;
  cfg.stationary_intruders = 0;
  cfg.frames = 12;
  cfg.seed = 4;
  cfg.out_dir = temp_dir("zero");
  const TrialMetrics m = run_detection_trial(cfg);
  CHECK(m.frames_observed == 12);
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
  CHECK(m.tp == 0);
  CHECK(!m.precision.has_value());

  // Undefined metrics render as empty CSV fields, never as numbers.
  const std::string scores = slurp(cfg.out_dir / "scores.csv");
  CHECK(scores.find("total,0,0,0,,,") != std::string::npos);
}

TEST_CASE("run_detection_trial validates the frame count") {
  DetectionTrialConfig cfg;
  cfg.frames = 0;
  CHECK_THROWS_AS(run_detection_trial(cfg), InvalidParameterError);
}

TEST_CASE("a parked intruder in front of a parked robot gives recall 1") {
  Scenario scenario = build_scenario(make_map1(), fast_params());
  scenario.world.rng = Rng(2);

  RobotState robot;
  robot.id = 0;
  robot.pose = {0.0, 0.0};
  robot.sensor = scenario.params.sensor;
  robot.diameter = scenario.params.robot_diameter;
  scenario.world.robots.push_back(robot);

  IntruderState intruder;
  intruder.id = kIntruderIdBase;
  intruder.mobile = false;
  intruder.pose = {1.0, 0.0};
  intruder.footprint.radius = 0.15;
  scenario.world.intruders.push_back(intruder);

  TrialMetrics metrics;
  for (long frame = 0; frame < 10; ++frame) {
    const FrameResult result = sense_frame(scenario, frame);
    const auto truth = truth_boxes(scenario.world, scenario.prior.geom);
    const auto flags = in_range_flags(scenario.world, scenario.params.sensor.max_range);
    accumulate(metrics, frame_score(result.fused, truth, flags, frame));
  }
  finalize(metrics);
  REQUIRE(metrics.recall.has_value());
  CHECK(*metrics.recall == doctest::Approx(1.0));
  CHECK(metrics.fn == 0);
  CHECK(metrics.tp >= 10);
}

TEST_CASE("a robot parked against a wall reports nothing") {
  Scenario scenario = build_scenario(make_map1(), fast_params());
  scenario.world.rng = Rng(6);

  RobotState robot;
  robot.id = 0;
  robot.pose = {2.55, 0.4};  // 0.35 m from the east wall's inner face
  robot.sensor = scenario.params.sensor;
  robot.diameter = scenario.params.robot_diameter;
  scenario.world.robots.push_back(robot);

  for (long frame = 0; frame < 10; ++frame) {
    const FrameResult result = sense_frame(scenario, frame);
    CHECK(result.fused.empty());  // wall returns are absorbed by the prior
  }
}

TEST_CASE("three watchers fuse one intruder into exactly one detection") {
  Scenario scenario = build_scenario(make_map1(), fast_params());
  scenario.world.rng = Rng(3);

  const WorldPoint center{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    RobotState robot;
    robot.id = k;
    const double angle = 2.0 * M_PI * k / 3.0;
    robot.pose = {center.x + std::cos(angle), center.y + std::sin(angle)};
    robot.heading = angle + M_PI;  // facing the center
    robot.sensor = scenario.params.sensor;
    robot.diameter = scenario.params.robot_diameter;
    scenario.world.robots.push_back(robot);
  }
  IntruderState intruder;
  intruder.id = kIntruderIdBase;
  intruder.mobile = false;
  intruder.pose = center;
  intruder.footprint.radius = 0.15;
  scenario.world.intruders.push_back(intruder);

  for (long frame = 0; frame < 20; ++frame) {
    const FrameResult result = sense_frame(scenario, frame);
    REQUIRE(result.fused.size() == 1);
    const auto truth = truth_boxes(scenario.world, scenario.prior.geom);
    REQUIRE(truth.size() == 1);
    CHECK(intersection_area(result.fused[0].box, truth[0]) > 0);
  }
}

TEST_CASE("identical seeds produce byte-identical trial outputs") {
  DetectionTrialConfig cfg;
  cfg.params = fast_params();
  cfg.robots = 2;
  cfg.mobile_intruders = 2;
  cfg.stationary_intruders = 1;
  cfg.frames = 10;
  cfg.seed = 77;

  const auto dir_a = temp_dir("det_a");
  const auto dir_b = temp_dir("det_b");
  cfg.out_dir = dir_a;
  const TrialMetrics a = run_detection_trial(cfg);
  cfg.out_dir = dir_b;
  const TrialMetrics b = run_detection_trial(cfg);

  CHECK(a.tp == b.tp);
  CHECK(a.fp == b.fp);
  CHECK(a.fn == b.fn);
  for (const char* name : {"scores.csv", "detections.csv", "events.log"}) {
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
}

TEST_CASE("trial outputs include spawn and goal events") {
  DetectionTrialConfig cfg;
  cfg.params = fast_params();
  cfg.robots = 1;
  cfg.mobile_intruders = 1;
  cfg.stationary_intruders = 0;
  cfg.frames = 5;
  cfg.seed = 8;
  cfg.out_dir = temp_dir("events");
  run_detection_trial(cfg);

  const std::string log = slurp(cfg.out_dir / "events.log");
  CHECK(log.find("spawn,0,") != std::string::npos);
  CHECK(log.find("spawn,1000,") != std::string::npos);
  CHECK(log.find(",goal,") != std::string::npos);
}

TEST_CASE("labyrinth campaign smoke run produces consistent cells") {
  CampaignConfig cfg;
  cfg.params = fast_params();
  cfg.robot_counts = {1, 2};
  cfg.intruder_counts = {1};
  cfg.trials = 2;
  cfg.time_cap = 20.0;
  cfg.seed = 5;
  cfg.out_dir = temp_dir("campaign");
  cfg.event_logs = true;

  const CampaignResult result = run_labyrinth_campaign(cfg);
  REQUIRE(result.cells.size() == 2);
  REQUIRE(result.records.size() == 4);
  for (const CampaignCell& cell : result.cells) {
    REQUIRE(cell.success_rates.size() == 2);
    const double mean = (cell.success_rates[0] + cell.success_rates[1]) / 2.0;
    CHECK(cell.mean_success == doctest::Approx(mean));
    for (double r : cell.success_rates) {
      CHECK(r >= 0.0);
      CHECK(r <= 100.0);
    }
  }
  CHECK(std::filesystem::exists(cfg.out_dir / "campaign.csv"));
  CHECK(std::filesystem::exists(cfg.out_dir / "campaign_means.csv"));
  CHECK(std::filesystem::exists(cfg.out_dir / "success_rates.svg"));
  CHECK(std::filesystem::exists(cfg.out_dir / "events-1-1-0.log"));
}

TEST_CASE("campaigns are deterministic and job-count independent") {
  CampaignConfig cfg;
  cfg.params = fast_params();
  cfg.robot_counts = {1};
  cfg.intruder_counts = {1};
  cfg.trials = 2;
  cfg.time_cap = 15.0;
  cfg.seed = 6;

  const CampaignResult serial = run_labyrinth_campaign(cfg);
  cfg.jobs = 2;
  const CampaignResult parallel = run_labyrinth_campaign(cfg);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].seed == parallel.records[i].seed);
    CHECK(serial.records[i].caught == parallel.records[i].caught);
    CHECK(serial.records[i].rate == parallel.records[i].rate);
  }
}

TEST_CASE("intruders out of reach within the time cap are never caught") {
  // Spawns are at least 3 m from every robot; at 0.22 m/s a robot covers
  // barely 1 m in the capped 5 s, so capture is structurally impossible.
  CampaignConfig cfg;
  cfg.params = fast_params();
  cfg.robot_counts = {3};
  cfg.intruder_counts = {2};
  cfg.trials = 3;
  cfg.time_cap = 5.0;
  cfg.seed = 17;
  const CampaignResult result = run_labyrinth_campaign(cfg);
  for (const CampaignTrialRecord& rec : result.records) {
    CHECK(rec.caught == 0);
    CHECK(rec.rate == 0.0);
  }
  CHECK(result.cells[0].mean_success == 0.0);
}

TEST_CASE("a zero capture radius never catches anyone") {
  CampaignConfig cfg;
  cfg.params = fast_params();
  cfg.params.capture_radius = 0.0;
  cfg.robot_counts = {2};
  cfg.intruder_counts = {2};
  cfg.trials = 1;
  cfg.time_cap = 10.0;
  cfg.seed = 7;
  const CampaignResult result = run_labyrinth_campaign(cfg);
  for (const CampaignTrialRecord& rec : result.records) {
    CHECK(rec.caught == 0);
    CHECK(rec.rate == 0.0);
  }
}
