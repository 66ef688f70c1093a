#include "sentinel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "sentinel/errors.hpp"
#include "sentinel/map_io.hpp"
#include "sentinel/patrol.hpp"

namespace sentinel {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string metric_field(std::optional<double> v) {
  return v ? fmt("%.6f", *v) : std::string();
}

void record_event(std::vector<Event>* events, double t, const char* type, int id,
                  WorldPoint where) {
  if (events) events->push_back({t, type, id, where});
}

void write_events(const std::vector<Event>& events, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write event log " + path.string());
  out << "t,event_type,entity_id,x,y\n";
  for (const Event& e : events) {
    out << fmt("%.3f", e.t) << "," << e.type << "," << e.entity_id << ","
        << fmt("%.4f", e.where.x) << "," << fmt("%.4f", e.where.y) << "\n";
  }
}

/// An already-placed entity: center plus effective footprint radius.
struct Placed {
  WorldPoint center;
  double radius;
};

double footprint_radius(const IntruderState& intruder) {
  if (intruder.footprint.kind == Footprint::Kind::disc) return intruder.footprint.radius;
  return std::hypot(intruder.footprint.width, intruder.footprint.length) / 2.0;
}

std::vector<Placed> entity_extents(const WorldModel& world) {
  std::vector<Placed> taken;
  for (const RobotState& r : world.robots) taken.push_back({r.pose, r.diameter / 2.0});
  for (const IntruderState& i : world.intruders) taken.push_back({i.pose, footprint_radius(i)});
  return taken;
}

/// Samples a free interior point whose footprint of own_radius keeps
/// wall clearance (on the inflated prior) and a margin to every placed
/// entity's footprint.
WorldPoint sample_free_point(const Scenario& scenario, Rng& rng, double own_radius,
                             const std::vector<Placed>& taken, double margin = 0.2,
                             int max_tries = 20000) {
  const WorldRect& interior = scenario.world.interior;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const WorldPoint p{rng.uniform(interior.x_min, interior.x_max),
                       rng.uniform(interior.y_min, interior.y_max)};
    if (!clear_of_occupied(scenario.inflated_prior, p, own_radius + 0.1)) continue;
    bool blocked = false;
    for (const Placed& q : taken) {
      if (distance(p, q.center) < own_radius + q.radius + margin) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return p;
  }
  throw Error("sample_free_point: no admissible free space found");
}

int steps_per_frame(const SimParams& params) {
  const int steps = static_cast<int>(std::lround(1.0 / (params.sensor.rate_hz * params.dt)));
  return std::max(1, steps);
}

}  // namespace

WorldModel resolve_map(const std::string& selector) {
  if (selector == "map1") return make_map1();
  if (selector == "map2") return make_map2();
  return load_arena(selector);
}

Scenario build_scenario(WorldModel world, const SimParams& params) {
  Scenario scenario;
  scenario.params = params;
  auto [prior, inflated] = build_global_maps(world, params.resolution,
                                             params.global_inflation, params.thresh_global);
  scenario.prior = std::move(prior);
  scenario.inflated_prior = std::move(inflated);
  scenario.world = std::move(world);
  const int half = static_cast<int>(std::ceil(params.sensor.max_range / params.resolution));
  scenario.local_w = 2 * half;
  scenario.local_l = 2 * half;
  return scenario;
}

FrameResult sense_frame(Scenario& scenario, long frame_index) {
  WorldModel& world = scenario.world;
  const SimParams& p = scenario.params;
  const BinaryGrid live_world = rasterize_live(world, scenario.prior);

  FrameResult result;
  for (const RobotState& robot : world.robots) {
    const std::vector<double> scan =
        raycast(world, robot.pose, robot.heading, robot.sensor, live_world, robot.id,
                &world.rng);
    const Costmap local_costs =
        scan_to_costmap(scan, robot.pose, robot.heading, robot.sensor, scenario.local_w,
                        scenario.local_l, p.local_inflation, scenario.prior.geom);
    const BinaryGrid live_view = threshold(local_costs, p.thresh_local);
    LocalFrame frame = process_frame(live_view, scenario.inflated_prior, robot.pose,
                                     robot.id, p.min_blob_cells);

    RosterRobot entry;
    entry.id = robot.id;
    entry.pose = robot.pose;
    for (const BBox& box : frame.boxes) {
      entry.detections.push_back({box, robot.id, frame_index});
    }
    result.roster.push_back(std::move(entry));
    result.frames.push_back(std::move(frame));
  }

  result.roster = remove_ally_detections(
      std::move(result.roster), {p.iou_threshold, p.robot_diameter}, scenario.prior.geom);
  result.fused = merge_all(result.roster, p.iou_threshold);
  return result;
}

std::vector<BBox> truth_boxes(const WorldModel& world, const MapGeometry& geom) {
  std::vector<BBox> boxes;
  for (const IntruderState& intruder : world.intruders) {
    if (!intruder.active()) continue;
    double hw, hl;
    if (intruder.footprint.kind == Footprint::Kind::disc) {
      hw = hl = intruder.footprint.radius;
    } else {
      hw = intruder.footprint.width / 2.0;
      hl = intruder.footprint.length / 2.0;
    }
    const GridPoint lo =
        world_to_grid({intruder.pose.x - hw, intruder.pose.y - hl}, geom);
    const GridPoint hi =
        world_to_grid({intruder.pose.x + hw, intruder.pose.y + hl}, geom);
    BBox box{std::max(0, lo.x), std::max(0, lo.y),
             std::min(geom.width_cells, hi.x + 1), std::min(geom.height_cells, hi.y + 1)};
    if (box.valid()) boxes.push_back(box);
  }
  return boxes;
}

std::vector<char> in_range_flags(const WorldModel& world, double max_range) {
  std::vector<char> flags;
  for (const IntruderState& intruder : world.intruders) {
    if (!intruder.active()) continue;
    char in_range = 0;
    for (const RobotState& robot : world.robots) {
      if (distance(intruder.pose, robot.pose) <= max_range) {
        in_range = 1;
        break;
      }
    }
    flags.push_back(in_range);
  }
  return flags;
}

namespace {

RobotState robot_template(const Scenario& scenario, int id) {
  RobotState robot;
  robot.id = id;
  robot.speed_limit = scenario.params.robot_speed;
  robot.diameter = scenario.params.robot_diameter;
  robot.sensor = scenario.params.sensor;
  return robot;
}

}  // namespace

void spawn_robots(Scenario& scenario, int count, std::vector<Event>* events) {
  if (count < 1) {
    throw InvalidParameterError("spawn_robots: need at least one robot");
  }
  WorldModel& world = scenario.world;
  for (int k = 0; k < count; ++k) {
    RobotState robot = robot_template(scenario, k);
    robot.pose = sample_free_point(scenario, world.rng, robot.diameter / 2.0,
                                   entity_extents(world), 0.3);
    robot.heading = world.rng.uniform(0.0, 2.0 * M_PI);
    world.robots.push_back(robot);
    record_event(events, world.clock, "spawn", robot.id, robot.pose);
  }
}

void spawn_robots_center_block(Scenario& scenario, int count, std::vector<Event>* events) {
  if (count < 1) {
    throw InvalidParameterError("spawn_robots_center_block: need at least one robot");
  }
  WorldModel& world = scenario.world;
  const double ring = count == 1 ? 0.0 : 1.0;
  for (int k = 0; k < count; ++k) {
    const double angle = 2.0 * M_PI * k / count;
    RobotState robot = robot_template(scenario, k);
    robot.pose = {ring * std::cos(angle), ring * std::sin(angle)};
    robot.heading = angle;
    world.robots.push_back(robot);
    record_event(events, world.clock, "spawn", robot.id, robot.pose);
  }
}

void spawn_wandering_intruders(Scenario& scenario, int mobile, int stationary,
                               std::vector<Event>* events) {
  WorldModel& world = scenario.world;
  Rng& rng = world.rng;
  int next_id = kIntruderIdBase + static_cast<int>(world.intruders.size());

  for (int k = 0; k < stationary; ++k) {
    IntruderState intruder;
    intruder.id = next_id++;
    intruder.mobile = false;
    intruder.footprint.kind = Footprint::Kind::box;
    intruder.footprint.width = rng.uniform(scenario.params.box_side_min,
                                           scenario.params.box_side_max);
    intruder.footprint.length = rng.uniform(scenario.params.box_side_min,
                                            scenario.params.box_side_max);
    intruder.pose = sample_free_point(scenario, rng, footprint_radius(intruder),
                                      entity_extents(world), 0.3);
    world.intruders.push_back(intruder);
    record_event(events, world.clock, "spawn", intruder.id, intruder.pose);
  }

  for (int k = 0; k < mobile; ++k) {
    IntruderState intruder;
    intruder.id = next_id++;
    intruder.mobile = true;
    intruder.speed = scenario.params.intruder_speed;
    intruder.footprint.kind = Footprint::Kind::disc;
    intruder.footprint.radius = scenario.params.disc_radius;
    intruder.pose = sample_free_point(scenario, rng, intruder.footprint.radius,
                                      entity_extents(world), 0.3);
    world.intruders.push_back(intruder);
    record_event(events, world.clock, "spawn", intruder.id, intruder.pose);
  }
}

void spawn_escaping_intruders(Scenario& scenario, int count, double min_escape_distance,
                              std::vector<Event>* events) {
  WorldModel& world = scenario.world;
  Rng& rng = world.rng;
  int next_id = kIntruderIdBase + static_cast<int>(world.intruders.size());

  for (int k = 0; k < count; ++k) {
    IntruderState intruder;
    intruder.id = next_id++;
    intruder.mobile = true;
    intruder.speed = scenario.params.intruder_speed;
    intruder.footprint.kind = Footprint::Kind::disc;
    intruder.footprint.radius = scenario.params.disc_radius;

    std::vector<WorldPoint> robot_poses;
    for (const RobotState& r : world.robots) robot_poses.push_back(r.pose);
    for (int attempt = 0;; ++attempt) {
      intruder.pose = sample_free_point(scenario, rng, intruder.footprint.radius,
                                        entity_extents(world), 0.3);
      bool too_close = false;
      for (const WorldPoint& rp : robot_poses) {
        if (distance(intruder.pose, rp) < 3.0) {
          too_close = true;
          break;
        }
      }
      if (too_close && attempt < 1000) continue;

      // Escape point far from the spawn, reachable on the inflated prior.
      bool routed = false;
      for (int escape_try = 0; escape_try < 1000; ++escape_try) {
        const WorldPoint escape = sample_free_point(scenario, rng, 0.2, {});
        if (distance(escape, intruder.pose) < min_escape_distance) continue;
        if (route_to(intruder.path, intruder.pose, escape, scenario.inflated_prior)) {
          intruder.escape_goal = escape;
          routed = true;
          break;
        }
      }
      if (routed) break;
      if (attempt >= 1000) {
        throw Error("spawn_escaping_intruders: no spawn/escape pair found");
      }
    }
    world.intruders.push_back(intruder);
    record_event(events, world.clock, "spawn", intruder.id, intruder.pose);
  }
}

void update_patrols(Scenario& scenario, std::vector<Event>* events) {
  WorldModel& world = scenario.world;
  const SimParams& p = scenario.params;

  for (RobotState& robot : world.robots) {
    if (robot.mode != RobotMode::patrolling) continue;
    const bool reached = robot.patrol_goal && robot.path.empty() &&
                         distance(robot.pose, *robot.patrol_goal) <= p.pursuit.reach_distance;
    const bool stale = robot.goal_age > p.goal_staleness;
    if (robot.patrol_goal && !reached && !stale && !robot.path.empty()) continue;

    const WorldPoint goal = gen_patrol_goal(robot, world, scenario.inflated_prior,
                                            world.rng, p.wall_clearance);
    robot.patrol_goal = goal;
    robot.goal_age = 0.0;
    if (route_to(robot.path, robot.pose, goal, scenario.inflated_prior)) {
      record_event(events, world.clock, "goal", robot.id, goal);
    } else {
      robot.patrol_goal.reset();  // resample next tick
    }
  }

  for (IntruderState& intruder : world.intruders) {
    if (!intruder.active() || !intruder.mobile || intruder.escape_goal) continue;
    if (!intruder.path.empty()) continue;
    // Wanderer: pick the next random waypoint.
    for (int attempt = 0; attempt < 100; ++attempt) {
      const WorldPoint goal =
          sample_free_point(scenario, world.rng, intruder.footprint.radius, {});
      if (route_to(intruder.path, intruder.pose, goal, scenario.inflated_prior)) {
        record_event(events, world.clock, "goal", intruder.id, goal);
        break;
      }
    }
  }
}

TrialMetrics run_detection_trial(const DetectionTrialConfig& cfg) {
  if (cfg.frames < 1) {
    throw InvalidParameterError("run_detection_trial: frames must be >= 1");
  }
  Scenario scenario = build_scenario(resolve_map(cfg.map), cfg.params);
  scenario.world.rng = Rng(cfg.seed);

  std::vector<Event> events;
  // Bulky stationary intruders claim space first; robots fill in around them.
  spawn_wandering_intruders(scenario, cfg.mobile_intruders, cfg.stationary_intruders,
                            &events);
  spawn_robots(scenario, cfg.robots, &events);

  const bool writing = !cfg.out_dir.empty();
  std::ofstream scores_csv;
  std::ofstream detections_csv;
  if (writing) {
    std::filesystem::create_directories(cfg.out_dir);
    scores_csv.open(cfg.out_dir / "scores.csv");
    detections_csv.open(cfg.out_dir / "detections.csv");
    if (!scores_csv || !detections_csv) {
      throw Error("cannot write CSV outputs under " + cfg.out_dir.string());
    }
    scores_csv << "frame,tp,fp,fn\n";
    detections_csv << "frame,box_x1,box_y1,box_x2,box_y2,source_robot\n";
    save_map(scenario.prior, cfg.out_dir / "prior.pgm");
    save_map(scenario.inflated_prior, cfg.out_dir / "inflated_prior.pgm");
  }
  const bool dumping = !cfg.dump_dir.empty();
  if (dumping) std::filesystem::create_directories(cfg.dump_dir);

  TrialMetrics metrics;
  const int steps = steps_per_frame(cfg.params);
  for (long frame = 0; frame < cfg.frames; ++frame) {
    for (int s = 0; s < steps; ++s) {
      update_patrols(scenario, &events);
      step(scenario.world, cfg.params.dt);
    }
    FrameResult result = sense_frame(scenario, frame);
    const std::vector<BBox> truth = truth_boxes(scenario.world, scenario.prior.geom);
    const std::vector<char> flags =
        in_range_flags(scenario.world, cfg.params.sensor.max_range);
    const FrameScore score = frame_score(result.fused, truth, flags, frame);
    accumulate(metrics, score);

    if (writing) {
      scores_csv << frame << "," << score.tp << "," << score.fp << "," << score.fn << "\n";
      for (const Detection& det : result.fused) {
        detections_csv << frame << "," << det.box.x1 << "," << det.box.y1 << ","
                       << det.box.x2 << "," << det.box.y2 << "," << det.source_robot
                       << "\n";
      }
    }
    if (dumping) {
      for (const LocalFrame& lf : result.frames) {
        const std::string stem =
            "r" + std::to_string(lf.robot_id) + "_f" + std::to_string(frame) + "_";
        write_pgm(to_image(lf.live), cfg.dump_dir / (stem + "A.pgm"));
        write_pgm(to_image(lf.prior_crop), cfg.dump_dir / (stem + "B.pgm"));
        write_pgm(to_image(lf.merged), cfg.dump_dir / (stem + "C.pgm"));
        write_pgm(to_image(lf.difference), cfg.dump_dir / (stem + "D.pgm"));
      }
    }
  }
  finalize(metrics);

  if (writing) {
    scores_csv << "total," << metrics.tp << "," << metrics.fp << "," << metrics.fn << ","
               << metric_field(metrics.precision) << "," << metric_field(metrics.recall)
               << "," << metric_field(metrics.f1) << "\n";
    write_events(events, cfg.out_dir / "events.log");
  }
  return metrics;
}

namespace {

CampaignTrialRecord run_labyrinth_trial(const CampaignConfig& cfg, int n_intruders,
                                        int n_robots, int trial, std::uint64_t seed,
                                        std::vector<Event>* events) {
  Scenario scenario = build_scenario(make_map2(), cfg.params);
  scenario.world.rng = Rng(seed);
  spawn_robots_center_block(scenario, n_robots, events);
  spawn_escaping_intruders(scenario, n_intruders, cfg.min_escape_distance, events);

  WorldModel& world = scenario.world;
  const int steps = steps_per_frame(cfg.params);
  long frame = 0;
  int step_count = 0;

  const auto all_done = [&] {
    return std::none_of(world.intruders.begin(), world.intruders.end(),
                        [](const IntruderState& i) { return i.active(); });
  };

  std::vector<char> was_caught(world.intruders.size(), 0);
  std::vector<char> was_escaped(world.intruders.size(), 0);
  while (world.clock < cfg.time_cap && !all_done()) {
    update_patrols(scenario, events);
    step(world, cfg.params.dt);
    check_captures(world, cfg.params.capture_radius);
    for (std::size_t i = 0; i < world.intruders.size(); ++i) {
      const IntruderState& intr = world.intruders[i];
      if (intr.caught && !was_caught[i]) {
        was_caught[i] = 1;
        record_event(events, world.clock, "caught", intr.id, intr.pose);
      }
      if (intr.escaped && !was_escaped[i]) {
        was_escaped[i] = 1;
        record_event(events, world.clock, "escaped", intr.id, intr.pose);
      }
    }
    if (++step_count % steps == 0) {
      FrameResult result = sense_frame(scenario, frame++);
      dispatch_pursuit(world, result.fused, scenario.inflated_prior, cfg.params.pursuit);
    }
  }

  CampaignTrialRecord record;
  record.n_intruders = n_intruders;
  record.n_robots = n_robots;
  record.trial = trial;
  record.seed = seed;
  record.total = n_intruders;
  for (const IntruderState& intr : world.intruders) {
    if (intr.caught) ++record.caught;
  }
  record.rate = success_rate(record.caught, record.total);
  return record;
}

void write_success_chart(const std::filesystem::path& path,
                         const std::vector<CampaignCell>& cells,
                         const std::vector<int>& robot_counts,
                         const std::vector<int>& intruder_counts) {
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f"};
  const int width = 640, height = 480;
  const double left = 70, right = 600, top = 40, bottom = 420;

  std::ofstream out(path);
  if (!out) throw Error("cannot write chart " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";

  const auto x_of = [&](std::size_t idx) {
    if (robot_counts.size() == 1) return (left + right) / 2.0;
    return left + (right - left) * static_cast<double>(idx) /
                      static_cast<double>(robot_counts.size() - 1);
  };
  const auto y_of = [&](double rate) { return bottom - (bottom - top) * rate / 100.0; };

  for (int tick = 0; tick <= 100; tick += 20) {
    out << "<text x=\"" << left - 10 << "\" y=\"" << y_of(tick) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << tick << "</text>\n";
  }
  for (std::size_t i = 0; i < robot_counts.size(); ++i) {
    out << "<text x=\"" << x_of(i) << "\" y=\"" << bottom + 18
        << "\" font-size=\"12\" text-anchor=\"middle\">" << robot_counts[i] << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 40
      << "\" font-size=\"13\" text-anchor=\"middle\">security robots</text>\n";
  out << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (top + bottom) / 2 << ")\">mean success rate (%)</text>\n";

  for (std::size_t ii = 0; ii < intruder_counts.size(); ++ii) {
    const char* color = kColors[ii % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t ri = 0; ri < robot_counts.size(); ++ri) {
      const CampaignCell& cell = cells[ii * robot_counts.size() + ri];
      out << fmt("%.1f", x_of(ri)) << "," << fmt("%.1f", y_of(cell.mean_success)) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << right - 90 << "\" y=\"" << top + 16 * (ii + 1)
        << "\" font-size=\"12\" fill=\"" << color << "\">" << intruder_counts[ii]
        << " intruder" << (intruder_counts[ii] == 1 ? "" : "s") << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

CampaignResult run_labyrinth_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 1 || cfg.robot_counts.empty() || cfg.intruder_counts.empty()) {
    throw InvalidParameterError("run_labyrinth_campaign: nothing to run");
  }

  struct TrialSlot {
    int n_intruders, n_robots, trial;
    std::uint64_t seed;
  };
  std::vector<TrialSlot> slots;
  for (int ni : cfg.intruder_counts) {
    for (int nr : cfg.robot_counts) {
      for (int t = 0; t < cfg.trials; ++t) {
        slots.push_back({ni, nr, t, mix_seed(cfg.seed, slots.size())});
      }
    }
  }

  const bool writing = !cfg.out_dir.empty();
  if (writing) std::filesystem::create_directories(cfg.out_dir);

  std::vector<CampaignTrialRecord> records(slots.size());
  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, cfg.jobs);
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= slots.size()) break;
      const TrialSlot& slot = slots[i];
      std::vector<Event> events;
      records[i] = run_labyrinth_trial(cfg, slot.n_intruders, slot.n_robots, slot.trial,
                                       slot.seed, cfg.event_logs ? &events : nullptr);
      if (writing && cfg.event_logs) {
        const std::string name = "events-" + std::to_string(slot.n_intruders) + "-" +
                                 std::to_string(slot.n_robots) + "-" +
                                 std::to_string(slot.trial) + ".log";
        write_events(events, cfg.out_dir / name);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  CampaignResult result;
  result.records = records;
  for (int ni : cfg.intruder_counts) {
    for (int nr : cfg.robot_counts) {
      CampaignCell cell;
      cell.n_intruders = ni;
      cell.n_robots = nr;
      for (const CampaignTrialRecord& rec : records) {
        if (rec.n_intruders == ni && rec.n_robots == nr) {
          cell.success_rates.push_back(rec.rate);
        }
      }
      double sum = 0.0;
      for (double r : cell.success_rates) sum += r;
      cell.mean_success =
          cell.success_rates.empty() ? 0.0 : sum / static_cast<double>(cell.success_rates.size());
      result.cells.push_back(std::move(cell));
    }
  }

  if (writing) {
    std::ofstream campaign_csv(cfg.out_dir / "campaign.csv");
    if (!campaign_csv) throw Error("cannot write campaign.csv");
    campaign_csv << "n_intruders,n_robots,trial,seed,caught,total,success_rate\n";
    for (const CampaignTrialRecord& rec : records) {
      campaign_csv << rec.n_intruders << "," << rec.n_robots << "," << rec.trial << ","
                   << rec.seed << "," << rec.caught << "," << rec.total << ","
                   << fmt("%.2f", rec.rate) << "\n";
    }
    std::ofstream means_csv(cfg.out_dir / "campaign_means.csv");
    if (!means_csv) throw Error("cannot write campaign_means.csv");
    means_csv << "n_intruders,n_robots,trials,mean_success\n";
    for (const CampaignCell& cell : result.cells) {
      means_csv << cell.n_intruders << "," << cell.n_robots << ","
                << cell.success_rates.size() << "," << fmt("%.2f", cell.mean_success)
                << "\n";
    }
    write_success_chart(cfg.out_dir / "success_rates.svg", result.cells,
                        cfg.robot_counts, cfg.intruder_counts);
  }
  return result;
}

}  // namespace sentinel
