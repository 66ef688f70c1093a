#include "sentinel/metrics.hpp"

#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

std::optional<double> precision(long tp, long fp) {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> recall(long tp, long fn) {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> f1(std::optional<double> precision, std::optional<double> recall) {
  if (!precision || !recall) return std::nullopt;
  if (*precision + *recall == 0.0) return std::nullopt;
  return 2.0 * (*precision * *recall) / (*precision + *recall);
}

double success_rate(int caught, int total) {
  if (total <= 0) {
    throw InvalidParameterError("success_rate: total must be > 0, got " +
                                std::to_string(total));
  }
  if (caught < 0 || caught > total) {
    throw InvalidParameterError("success_rate: caught must lie in [0, total]");
  }
  return 100.0 * static_cast<double>(caught) / static_cast<double>(total);
}

FrameScore frame_score(const std::vector<Detection>& fused,
                       const std::vector<BBox>& truth,
                       const std::vector<char>& in_range, long frame) {
  FrameScore score;
  score.frame = frame;

  for (const Detection& det : fused) {
    bool hits_truth = false;
    for (const BBox& t : truth) {
      if (intersection_area(det.box, t) > 0) {
        hits_truth = true;
        break;
      }
    }
    if (hits_truth) {
      ++score.tp;
    } else {
      ++score.fp;
    }
  }

  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (i < in_range.size() && !in_range[i]) continue;
    bool covered = false;
    for (const Detection& det : fused) {
      if (intersection_area(det.box, truth[i]) > 0) {
        covered = true;
        break;
      }
    }
    if (!covered) ++score.fn;
  }
  return score;
}

void accumulate(TrialMetrics& metrics, const FrameScore& score) {
  ++metrics.frames_observed;
  metrics.tp += score.tp;
  metrics.fp += score.fp;
  metrics.fn += score.fn;
}

void finalize(TrialMetrics& metrics) {
  metrics.precision = precision(metrics.tp, metrics.fp);
  metrics.recall = recall(metrics.tp, metrics.fn);
  metrics.f1 = f1(metrics.precision, metrics.recall);
}

}  // namespace sentinel
