// sentinel: deterministic multi-robot security simulator and detection CLI.
//
// Subcommands:
//   map       generate and export prior / inflated-prior map files
//   detect    run a detection trial and score it frame by frame
//   labyrinth run a capture campaign over robot/intruder team sizes
//   render    compose frame dumps and fused-box overlays into images
//
// Exit codes: 0 success, 1 runtime failure, 2 usage/config error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentinel/errors.hpp"
#include "sentinel/experiments.hpp"
#include "sentinel/map_io.hpp"
#include "sentinel/render.hpp"

namespace {

// Flat key=value config machinery: every option registered here can also be
// fed from --config FILE, with explicit command-line flags taking precedence.
class ConfigKeys {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* cmd, const std::string& flag, T& var, const std::string& help) {
    CLI::Option* opt = cmd->add_option("--" + flag, var, help);
    setters_[flag] = {opt, [&var, flag](const std::string& text) {
                        std::istringstream stream(text);
                        T value{};
                        if (!(stream >> value) || !(stream >> std::ws).eof()) {
                          throw CLI::ValidationError("config key '" + flag +
                                                     "' has a bad value: " + text);
                        }
                        var = value;
                      }};
    return opt;
  }

  CLI::Option* add(CLI::App* cmd, const std::string& flag, std::string& var,
                   const std::string& help) {
    CLI::Option* opt = cmd->add_option("--" + flag, var, help);
    setters_[flag] = {opt, [&var](const std::string& text) { var = text; }};
    return opt;
  }

  CLI::Option* add_flag(CLI::App* cmd, const std::string& flag, bool& var,
                        const std::string& help) {
    CLI::Option* opt = cmd->add_flag("--" + flag, var, help);
    setters_[flag] = {opt, [&var, flag](const std::string& text) {
                        if (text == "true" || text == "1") {
                          var = true;
                        } else if (text == "false" || text == "0") {
                          var = false;
                        } else {
                          throw CLI::ValidationError("config key '" + flag +
                                                     "' must be true/false, got: " + text);
                        }
                      }};
    return opt;
  }

  /// Applies key=value lines; keys already given on the command line keep
  /// their flag values. Returns the keys actually applied from the file.
  std::vector<std::string> apply_file(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open config file " + path);
    std::vector<std::string> applied;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          throw CLI::ValidationError("config line " + std::to_string(line_no) +
                                     " is not key = value");
        }
        continue;
      }
      const auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      const auto it = setters_.find(key);
      if (it == setters_.end()) {
        throw CLI::ValidationError("config key '" + key + "' is not recognized");
      }
      if (it->second.option->count() > 0) continue;  // flags override the file
      it->second.assign(value);
      applied.push_back(key);
    }
    return applied;
  }

 private:
  struct Setter {
    CLI::Option* option;
    std::function<void(const std::string&)> assign;
  };
  std::map<std::string, Setter> setters_;
};

struct CommonOptions {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir = "sentinel_out";
  std::string config_file;
  sentinel::SimParams params;
  ConfigKeys keys;
};

// "1..5", "1,3,5" or "4" -> list of counts.
std::vector<int> parse_count_list(const std::string& text) {
  std::vector<int> counts;
  const auto range_pos = text.find("..");
  try {
    if (range_pos != std::string::npos) {
      const int lo = std::stoi(text.substr(0, range_pos));
      const int hi = std::stoi(text.substr(range_pos + 2));
      for (int v = lo; v <= hi; ++v) counts.push_back(v);
    } else {
      std::stringstream stream(text);
      std::string piece;
      while (std::getline(stream, piece, ',')) counts.push_back(std::stoi(piece));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("count list must look like 1..5 or 1,3,5, got: " + text);
  }
  for (int v : counts) {
    if (v < 1) throw CLI::ValidationError("counts must be >= 1");
  }
  if (counts.empty()) throw CLI::ValidationError("empty count list");
  return counts;
}

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  ConfigKeys& keys = opts.keys;
  cmd->add_option("--config", opts.config_file, "flat key=value config file; flags override");
  keys.add(cmd, "seed", opts.seed, "random seed (generated and printed if omitted)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  keys.add(cmd, "out", opts.out_dir, "output directory");
  keys.add(cmd, "resolution", opts.params.resolution, "grid resolution, m/cell")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "thresh-local", opts.params.thresh_local,
           "local costmap occupancy threshold [1,100]")
      ->check(CLI::Range(1, 100));
  keys.add(cmd, "thresh-global", opts.params.thresh_global,
           "global map occupancy threshold [1,100]")
      ->check(CLI::Range(1, 100));
  keys.add(cmd, "iou-threshold", opts.params.iou_threshold,
           "IoU threshold for ally removal and fusion (0,1]")
      ->check(CLI::Range(1e-9, 1.0));
  keys.add(cmd, "capture-radius", opts.params.capture_radius, "capture distance, m")
      ->check(CLI::NonNegativeNumber);
  keys.add(cmd, "robot-diameter", opts.params.robot_diameter, "robot footprint, m")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "sensor-range", opts.params.sensor.max_range, "usable laser range, m")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "sensor-noise", opts.params.sensor.range_noise_sigma,
           "gaussian range noise sigma, m")
      ->check(CLI::NonNegativeNumber);
  keys.add(cmd, "robot-speed", opts.params.robot_speed, "robot speed, m/s")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "intruder-speed", opts.params.intruder_speed, "intruder speed, m/s")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "global-inflation", opts.params.global_inflation,
           "prior map inflation radius, m")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "min-blob-cells", opts.params.min_blob_cells,
           "drop components smaller than this many cells")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "box-side-min", opts.params.box_side_min,
           "stationary intruder box side minimum, m")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "box-side-max", opts.params.box_side_max,
           "stationary intruder box side maximum, m")
      ->check(CLI::PositiveNumber);
  keys.add(cmd, "disc-radius", opts.params.disc_radius, "mobile intruder radius, m")
      ->check(CLI::PositiveNumber);
}

// Config file first (respecting explicit flags), then the seed.
void finalize_common(CommonOptions& opts) {
  if (!opts.config_file.empty()) {
    for (const std::string& key : opts.keys.apply_file(opts.config_file)) {
      if (key == "seed") opts.seed_set = true;
    }
  }
  if (!opts.seed_set) {
    std::random_device device;
    opts.seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    std::printf("seed: %" PRIu64 " (generated)\n", opts.seed);
  }
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

KeyValues common_config(const CommonOptions& opts) {
  const sentinel::SimParams& p = opts.params;
  return {{"seed", std::to_string(opts.seed)},
          {"out", opts.out_dir},
          {"resolution", num(p.resolution)},
          {"thresh-local", std::to_string(p.thresh_local)},
          {"thresh-global", std::to_string(p.thresh_global)},
          {"iou-threshold", num(p.iou_threshold)},
          {"capture-radius", num(p.capture_radius)},
          {"robot-diameter", num(p.robot_diameter)},
          {"sensor-range", num(p.sensor.max_range)},
          {"sensor-noise", num(p.sensor.range_noise_sigma)},
          {"robot-speed", num(p.robot_speed)},
          {"intruder-speed", num(p.intruder_speed)},
          {"global-inflation", num(p.global_inflation)},
          {"min-blob-cells", std::to_string(p.min_blob_cells)}};
}

// Echo the fully resolved configuration for provenance and replay.
void persist_config(const std::string& command, const CommonOptions& opts,
                    const KeyValues& extra) {
  std::filesystem::create_directories(opts.out_dir);
  std::ofstream out(std::filesystem::path(opts.out_dir) / "config.resolved");
  out << "# resolved configuration (" << command << ")\n";
  for (const auto& [key, value] : common_config(opts)) out << key << " = " << value << "\n";
  for (const auto& [key, value] : extra) out << key << " = " << value << "\n";
}

// map1, map2, or the path of a custom arena file.
sentinel::WorldModel world_for(const std::string& name) {
  if (name == "map1") return sentinel::make_map1();
  if (name == "map2") return sentinel::make_map2();
  if (std::filesystem::exists(name)) return sentinel::load_arena(name);
  throw CLI::ValidationError("--map/--name must be map1, map2 or an arena file, got: " +
                             name);
}

void print_metrics_row(const char* trial, const sentinel::TrialMetrics& m) {
  const auto field = [](std::optional<double> v) {
    return v ? std::to_string(*v).substr(0, 5) : std::string("  -  ");
  };
  std::printf("%-10s %8ld %8ld %8ld  %9s %9s %9s  %8ld\n", trial, m.tp, m.fp, m.fn,
              field(m.precision).c_str(), field(m.recall).c_str(), field(m.f1).c_str(),
              m.frames_observed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic 2D multi-robot security simulator"};
  app.require_subcommand(1);

  // --- map ---------------------------------------------------------------
  CommonOptions map_opts;
  std::string map_name = "map1";
  auto* cmd_map = app.add_subcommand("map", "generate and export arena maps");
  add_common_options(cmd_map, map_opts);
  map_opts.keys.add(cmd_map, "name", map_name, "map1, map2 or an arena file");

  // --- detect ------------------------------------------------------------
  CommonOptions det_opts;
  std::string det_map = "map1";
  int det_robots = 1;
  int det_intruders = 8;
  int det_stationary = 3;
  long det_frames = 1999;
  std::string det_dump;
  auto* cmd_detect = app.add_subcommand("detect", "run and score a detection trial");
  add_common_options(cmd_detect, det_opts);
  det_opts.keys.add(cmd_detect, "map", det_map, "map1, map2 or an arena file");
  det_opts.keys.add(cmd_detect, "robots", det_robots, "security robot count")
      ->check(CLI::PositiveNumber);
  det_opts.keys.add(cmd_detect, "intruders", det_intruders, "total intruder count")
      ->check(CLI::NonNegativeNumber);
  det_opts.keys
      .add(cmd_detect, "stationary", det_stationary,
           "how many intruders are stationary boxes (rest are mobile discs)")
      ->check(CLI::NonNegativeNumber);
  det_opts.keys.add(cmd_detect, "frames", det_frames, "sensor frames to observe")
      ->check(CLI::PositiveNumber);
  det_opts.keys.add(cmd_detect, "dump-frames", det_dump,
                    "directory for per-frame A/B/C/D dumps");

  // --- labyrinth ----------------------------------------------------------
  CommonOptions lab_opts;
  std::string lab_robots = "1..5";
  std::string lab_intruders = "1..5";
  int lab_trials = 20;
  double lab_time_cap = 240.0;
  int lab_jobs = 1;
  bool lab_events = false;
  auto* cmd_lab = app.add_subcommand("labyrinth", "run a capture-rate campaign");
  add_common_options(cmd_lab, lab_opts);
  lab_opts.keys.add(cmd_lab, "robots", lab_robots, "robot team sizes, e.g. 1..5 or 1,3,5");
  lab_opts.keys.add(cmd_lab, "intruders", lab_intruders,
                    "intruder counts, e.g. 1..5 or 1,3,5");
  lab_opts.keys.add(cmd_lab, "trials", lab_trials, "trials per cell")
      ->check(CLI::PositiveNumber);
  lab_opts.keys.add(cmd_lab, "time-cap", lab_time_cap, "simulated seconds per trial")
      ->check(CLI::PositiveNumber);
  lab_opts.keys.add(cmd_lab, "jobs", lab_jobs, "concurrent trials")
      ->check(CLI::PositiveNumber);
  lab_opts.keys.add_flag(cmd_lab, "dump-events", lab_events, "write per-trial event logs");

  // --- render -------------------------------------------------------------
  std::string render_run_dir;
  std::string render_frames_dir;
  std::string render_out = "sentinel_out/render";
  auto* cmd_render = app.add_subcommand("render", "compose dumps and overlays into images");
  cmd_render->add_option("--run", render_run_dir, "detect run output directory")->required();
  cmd_render->add_option("--frames-dir", render_frames_dir,
                         "frame dump directory (default: <run>/frames)");
  cmd_render->add_option("--out", render_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_map->parsed()) {
      finalize_common(map_opts);
      const sentinel::WorldModel world = world_for(map_name);
      const auto [prior, inflated] = sentinel::build_global_maps(
          world, map_opts.params.resolution, map_opts.params.global_inflation,
          map_opts.params.thresh_global);
      std::filesystem::create_directories(map_opts.out_dir);
      const std::filesystem::path out(map_opts.out_dir);
      const std::string stem = std::filesystem::path(map_name).stem().string();
      sentinel::save_map(prior, out / (stem + "_prior.pgm"));
      sentinel::save_map(inflated, out / (stem + "_inflated.pgm"));
      persist_config("map", map_opts, {{"name", map_name}});
      std::printf("wrote %s and %s (%dx%d cells)\n",
                  (out / (stem + "_prior.pgm")).c_str(),
                  (out / (stem + "_inflated.pgm")).c_str(), prior.geom.width_cells,
                  prior.geom.height_cells);
    } else if (cmd_detect->parsed()) {
      finalize_common(det_opts);
      if (det_map != "map1" && det_map != "map2" && !std::filesystem::exists(det_map)) {
        throw CLI::ValidationError("--map must be map1, map2 or an arena file, got: " +
                                   det_map);
      }
      if (det_frames < 1) throw CLI::ValidationError("--frames must be >= 1");
      sentinel::DetectionTrialConfig cfg;
      cfg.params = det_opts.params;
      cfg.map = det_map;
      cfg.robots = det_robots;
      cfg.stationary_intruders = std::min(det_stationary, det_intruders);
      cfg.mobile_intruders = det_intruders - cfg.stationary_intruders;
      cfg.frames = det_frames;
      cfg.seed = det_opts.seed;
      cfg.out_dir = det_opts.out_dir;
      cfg.dump_dir = det_dump;
      persist_config("detect", det_opts,
                     {{"map", det_map},
                      {"robots", std::to_string(det_robots)},
                      {"intruders", std::to_string(det_intruders)},
                      {"stationary", std::to_string(cfg.stationary_intruders)},
                      {"frames", std::to_string(det_frames)},
                      {"dump-frames", det_dump}});
      const sentinel::TrialMetrics metrics = sentinel::run_detection_trial(cfg);
      std::printf("%-10s %8s %8s %8s  %9s %9s %9s  %8s\n", "trial", "tp", "fp", "fn",
                  "precision", "recall", "f1", "frames");
      const std::string label = std::to_string(det_robots) + "-robot";
      print_metrics_row(label.c_str(), metrics);
    } else if (cmd_lab->parsed()) {
      finalize_common(lab_opts);
      sentinel::CampaignConfig cfg;
      cfg.params = lab_opts.params;
      cfg.robot_counts = parse_count_list(lab_robots);
      cfg.intruder_counts = parse_count_list(lab_intruders);
      cfg.trials = lab_trials;
      cfg.time_cap = lab_time_cap;
      cfg.seed = lab_opts.seed;
      cfg.jobs = lab_jobs;
      cfg.out_dir = lab_opts.out_dir;
      cfg.event_logs = lab_events;
      persist_config("labyrinth", lab_opts,
                     {{"robots", lab_robots},
                      {"intruders", lab_intruders},
                      {"trials", std::to_string(lab_trials)},
                      {"time-cap", num(lab_time_cap)},
                      {"jobs", std::to_string(lab_jobs)}});
      const sentinel::CampaignResult result = sentinel::run_labyrinth_campaign(cfg);

      std::printf("mean success rate (%%), %d trial(s) per cell\n", lab_trials);
      std::printf("%12s", "intruders\\q");
      for (int nr : cfg.robot_counts) std::printf(" %6d", nr);
      std::printf("\n");
      std::size_t idx = 0;
      for (int ni : cfg.intruder_counts) {
        std::printf("%12d", ni);
        for (std::size_t r = 0; r < cfg.robot_counts.size(); ++r) {
          std::printf(" %6.1f", result.cells[idx++].mean_success);
        }
        std::printf("\n");
      }
    } else if (cmd_render->parsed()) {
      const std::filesystem::path run_dir(render_run_dir);
      const std::filesystem::path frames_dir =
          render_frames_dir.empty() ? run_dir / "frames"
                                    : std::filesystem::path(render_frames_dir);
      const int written = sentinel::render_run(run_dir, frames_dir, render_out);
      std::printf("wrote %d image(s) to %s\n", written, render_out.c_str());
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sentinel::InvalidParameterError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
