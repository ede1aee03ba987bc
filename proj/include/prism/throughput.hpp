#pragma once

#include <cstdint>

#include "prism/frame_source.hpp"
#include "prism/keyframe_detector.hpp"

namespace prism {

struct ThroughputReport {
  std::int64_t frames = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  /// Detector time only; time spent inside the source's next() is excluded.
  double elapsed_s = 0.0;
  double fps = 0.0;
  KeyframeResult result;
};

/// Runs one full detection pass and reports frames / detector seconds.
/// Throws ValidationError("need >= 2 frames") for shorter streams.
[[nodiscard]] ThroughputReport measure_throughput(FrameSource& frames, const DetectorConfig& cfg,
                                                  unsigned threads = configured_thread_count());

}  // namespace prism
