#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "prism/frame.hpp"
#include "prism/frame_source.hpp"
#include "prism/parallel.hpp"

namespace prism {

/// Which deltas feed the mean / standard deviation of the adaptive threshold.
enum class StatsPopulation {
  kAllDeltas,    ///< every consecutive-frame delta
  kJndSurvivors  ///< only deltas that passed the JND gate
};

struct DetectorConfig {
  double jnd_threshold = 1.0;
  bool include_first_frame = false;
  double sigma_multiplier = 1.0;
  StatsPopulation stats_population = StatsPopulation::kAllDeltas;

  /// Throws ConfigError unless jnd_threshold >= 0 and sigma_multiplier > 0.
  void validate() const;
};

/// deltas[i] is the difference between frames i and i+1; jnd_mask[i] is set
/// when deltas[i] >= jnd_threshold.
struct DeltaSeries {
  std::vector<double> deltas;
  std::vector<bool> jnd_mask;
  double jnd_threshold = 1.0;

  /// Builds the mask for an existing list of deltas.
  static DeltaSeries from_deltas(std::vector<double> deltas, double jnd_threshold);

  [[nodiscard]] std::int64_t frame_count() const noexcept {
    return static_cast<std::int64_t>(deltas.size()) + 1;
  }
};

struct AdaptiveStats {
  double mu = 0.0;
  double sigma = 0.0;
  /// No delta passed the JND gate; mu and sigma are reported as 0.
  bool stable = true;
};

/// Mean and population standard deviation (divide by N) of the chosen delta
/// population. Returns {0, 0, stable} when no delta survives the JND gate.
[[nodiscard]] AdaptiveStats adaptive_stats(const DeltaSeries& series,
                                           StatsPopulation population = StatsPopulation::kAllDeltas);

struct KeyframeResult {
  std::vector<FrameIndex> keyframes;
  double mu = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  std::int64_t total_frames = 0;
  bool stable = true;
};

/// Threshold pass over an existing series: frame i+1 is a keyframe when
/// deltas[i] passed JND and deltas[i] > mu + sigma_multiplier * sigma.
[[nodiscard]] KeyframeResult select_keyframes(const DeltaSeries& series, const DetectorConfig& cfg);

/// Called once per decoded frame while it is still alive. `incoming` is the
/// delta from the previous frame (nullopt for frame 0).
using FrameObserver = std::function<void(const Frame& frame, std::optional<double> incoming)>;

/// Single-pass detector. Frame means may use the internal worker pool; the
/// series itself is reduced in frame order. Use one instance per thread.
class KeyframeDetector {
 public:
  explicit KeyframeDetector(DetectorConfig cfg = {}, unsigned threads = configured_thread_count());

  /// Throws IoError("no frames") on an empty stream and
  /// ValidationError("frame gap ...") on non-consecutive indices.
  DeltaSeries build_delta_series(FrameSource& frames, const FrameObserver& observer = {});

  KeyframeResult detect(FrameSource& frames, const FrameObserver& observer = {});

  [[nodiscard]] const DetectorConfig& config() const noexcept { return cfg_; }

 private:
  DetectorConfig cfg_;
  BlockPool pool_;
};

[[nodiscard]] DeltaSeries build_delta_series(FrameSource& frames, const DetectorConfig& cfg);
[[nodiscard]] KeyframeResult detect_keyframes(FrameSource& frames, const DetectorConfig& cfg);

}  // namespace prism
