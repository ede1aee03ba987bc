#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "prism/keyframe_detector.hpp"

namespace prism {

/// One consecutive-frame delta. `frame_index` is the later frame of the pair,
/// i.e. the frame that would become the keyframe.
struct TraceRow {
  FrameIndex frame_index = 0;
  double delta_e00 = 0.0;
  bool passed_jnd = false;
  bool selected = false;
};

struct DeltaTrace {
  double mu = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  double jnd_threshold = 0.0;
  std::int64_t total_frames = 0;
  std::vector<TraceRow> rows;
};

[[nodiscard]] DeltaTrace make_delta_trace(const DeltaSeries& series, const KeyframeResult& result);

/// CSV: `# key=value` comment lines for mu, sigma, threshold, jnd_threshold
/// and total_frames, then frame_index,delta_e00,passed_jnd,selected rows.
/// Reals are written in shortest round-trip form.
void write_delta_trace(std::ostream& out, const DeltaTrace& trace);

/// Inverse of write_delta_trace. Throws SchemaError on malformed input.
[[nodiscard]] DeltaTrace read_delta_trace(std::istream& in);

}  // namespace prism
