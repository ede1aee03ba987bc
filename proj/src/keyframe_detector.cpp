#include "prism/keyframe_detector.hpp"

#include <cmath>
#include <string>

#include "prism/ciede2000.hpp"
#include "prism/color_space.hpp"
#include "prism/errors.hpp"

namespace prism {

void DetectorConfig::validate() const {
  if (!(jnd_threshold >= 0.0) || !std::isfinite(jnd_threshold)) {
    throw ConfigError("jnd threshold must be a finite value >= 0");
  }
  if (!(sigma_multiplier > 0.0) || !std::isfinite(sigma_multiplier)) {
    throw ConfigError("sigma multiplier must be a finite value > 0");
  }
}

DeltaSeries DeltaSeries::from_deltas(std::vector<double> deltas, double jnd_threshold) {
  DeltaSeries s;
  s.jnd_threshold = jnd_threshold;
  s.jnd_mask.reserve(deltas.size());
  for (double d : deltas) s.jnd_mask.push_back(d >= jnd_threshold);
  s.deltas = std::move(deltas);
  return s;
}

AdaptiveStats adaptive_stats(const DeltaSeries& series, StatsPopulation population) {
  std::size_t survivors = 0;
  for (bool kept : series.jnd_mask) survivors += kept ? 1 : 0;
  if (survivors == 0) return {};

  const bool all = population == StatsPopulation::kAllDeltas;
  const auto included = [&](std::size_t i) { return all || series.jnd_mask[i]; };

  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    if (!included(i)) continue;
    sum += series.deltas[i];
    ++n;
  }
  const double mu = sum / static_cast<double>(n);

  double sq = 0.0;
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    if (!included(i)) continue;
    const double d = series.deltas[i] - mu;
    sq += d * d;
  }
  return {mu, std::sqrt(sq / static_cast<double>(n)), false};
}

KeyframeResult select_keyframes(const DeltaSeries& series, const DetectorConfig& cfg) {
  cfg.validate();
  const AdaptiveStats stats = adaptive_stats(series, cfg.stats_population);

  KeyframeResult result;
  result.mu = stats.mu;
  result.sigma = stats.sigma;
  result.threshold = stats.mu + cfg.sigma_multiplier * stats.sigma;
  result.total_frames = series.frame_count();
  result.stable = stats.stable;

  if (cfg.include_first_frame) result.keyframes.push_back(0);
  if (stats.stable) return result;
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    if (series.jnd_mask[i] && series.deltas[i] > result.threshold) {
      result.keyframes.push_back(static_cast<FrameIndex>(i) + 1);
    }
  }
  return result;
}

KeyframeDetector::KeyframeDetector(DetectorConfig cfg, unsigned threads)
    : cfg_(cfg), pool_(threads) {
  cfg_.validate();
}

DeltaSeries KeyframeDetector::build_delta_series(FrameSource& frames, const FrameObserver& observer) {
  std::vector<double> deltas;
  std::optional<LabTriple> previous;
  FrameIndex expected = 0;

  while (std::optional<Frame> frame = frames.next()) {
    if (frame->index() != expected) {
      throw ValidationError("frame gap: expected index " + std::to_string(expected) + ", got " +
                            std::to_string(frame->index()));
    }
    const LabTriple mean = frame_mean_lab(*frame, &pool_);
    std::optional<double> incoming;
    if (previous) {
      incoming = ciede2000(*previous, mean);
      deltas.push_back(*incoming);
    }
    if (observer) observer(*frame, incoming);
    previous = mean;
    ++expected;
  }
  if (expected == 0) throw IoError("no frames");
  return DeltaSeries::from_deltas(std::move(deltas), cfg_.jnd_threshold);
}

KeyframeResult KeyframeDetector::detect(FrameSource& frames, const FrameObserver& observer) {
  return select_keyframes(build_delta_series(frames, observer), cfg_);
}

DeltaSeries build_delta_series(FrameSource& frames, const DetectorConfig& cfg) {
  return KeyframeDetector(cfg).build_delta_series(frames);
}

KeyframeResult detect_keyframes(FrameSource& frames, const DetectorConfig& cfg) {
  return KeyframeDetector(cfg).detect(frames);
}

}  // namespace prism
