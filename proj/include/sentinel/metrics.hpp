#pragma once

#include <optional>
#include <vector>

#include "sentinel/fusion.hpp"
#include "sentinel/geometry.hpp"

namespace sentinel {

/// Per-frame detection counts. tp + fp always equals the number of fused
/// boxes scored in the frame.
struct FrameScore {
  long frame = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

/// Aggregate of a detection trial. Metrics are nullopt when their
/// denominator is empty (never silently 0 or 1).
struct TrialMetrics {
  long frames_observed = 0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

/// One (intruder count, team size) cell of a labyrinth campaign.
struct CampaignCell {
  int n_intruders = 0;
  int n_robots = 0;
  std::vector<double> success_rates;  // percent, one per trial
  double mean_success = 0.0;
};

std::optional<double> precision(long tp, long fp);
std::optional<double> recall(long tp, long fn);
std::optional<double> f1(std::optional<double> precision, std::optional<double> recall);

/// Percentage of intruders caught; total must be > 0.
double success_rate(int caught, int total);

/// Scores one frame: tp counts fused boxes overlapping at least one truth
/// box, fp the remainder, fn the in-range intruders covered by no fused box.
/// in_range[i] flags whether truth[i]'s intruder is within sensor range of
/// any robot.
FrameScore frame_score(const std::vector<Detection>& fused,
                       const std::vector<BBox>& truth,
                       const std::vector<char>& in_range, long frame);

/// Accumulates a frame into the running totals.
void accumulate(TrialMetrics& metrics, const FrameScore& score);

/// Fills the precision/recall/f1 fields from the accumulated totals.
void finalize(TrialMetrics& metrics);

}  // namespace sentinel
