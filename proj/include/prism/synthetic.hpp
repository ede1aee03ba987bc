#pragma once

#include <cstdint>
#include <vector>

#include "prism/frame_source.hpp"

namespace prism {

/// Piecewise-constant test video: segments of `segment_length` frames, each a
/// palette color with per-pixel noise in [-pixel_noise, pixel_noise] and a
/// per-frame brightness offset of 0 or 1 code value. Consecutive palette
/// colors differ by more than 29 dE00 while frames within a segment differ by
/// well under 1 dE00.
struct SyntheticSpec {
  std::int64_t frames = 100;
  std::uint32_t width = 64;
  std::uint32_t height = 64;
  std::int64_t segment_length = 20;
  int pixel_noise = 3;
  std::uint64_t seed = 0x5eed;
};

[[nodiscard]] const std::vector<Rgb8Pixel>& synthetic_palette();

/// Frames where a new segment begins (excluding frame 0).
[[nodiscard]] std::vector<FrameIndex> synthetic_transitions(const SyntheticSpec& spec);

/// Deterministic: frame i depends only on (spec, i).
[[nodiscard]] Frame synthetic_frame(const SyntheticSpec& spec, FrameIndex index);

class SyntheticVideoSource final : public FrameSource {
 public:
  explicit SyntheticVideoSource(SyntheticSpec spec);
  std::optional<Frame> next() override;
  [[nodiscard]] const SyntheticSpec& spec() const noexcept { return spec_; }

 private:
  SyntheticSpec spec_;
  FrameIndex cursor_ = 0;
};

}  // namespace prism
