#include "prism/synthetic.hpp"

#include <algorithm>

#include "prism/errors.hpp"

namespace prism {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint8_t clamp_channel(int v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}

}  // namespace

const std::vector<Rgb8Pixel>& synthetic_palette() {
  static const std::vector<Rgb8Pixel> palette = {
      {200, 40, 40},  {40, 160, 60},   {60, 60, 200},  {220, 200, 50},
      {150, 50, 160}, {40, 180, 190},  {225, 130, 40}, {90, 90, 90},
      {200, 200, 210}, {110, 60, 30},  {60, 120, 40},  {230, 120, 170},
  };
  return palette;
}

std::vector<FrameIndex> synthetic_transitions(const SyntheticSpec& spec) {
  std::vector<FrameIndex> out;
  for (FrameIndex f = spec.segment_length; f < spec.frames; f += spec.segment_length) out.push_back(f);
  return out;
}

Frame synthetic_frame(const SyntheticSpec& spec, FrameIndex index) {
  if (spec.segment_length <= 0) throw ConfigError("segment length must be positive");
  const auto& palette = synthetic_palette();
  const auto segment = static_cast<std::size_t>(index / spec.segment_length);
  const Rgb8Pixel base = palette[segment % palette.size()];

  std::uint64_t state = spec.seed ^ (static_cast<std::uint64_t>(index) * 0xd1b54a32d192ed03ULL);
  const int jitter = static_cast<int>(splitmix64(state) & 1U);
  const int span = 2 * spec.pixel_noise + 1;

  std::vector<Rgb8Pixel> pixels(static_cast<std::size_t>(spec.width) * spec.height);
  for (Rgb8Pixel& p : pixels) {
    std::uint64_t r = splitmix64(state);
    const int nr = spec.pixel_noise == 0 ? 0 : static_cast<int>(r % span) - spec.pixel_noise;
    r >>= 16;
    const int ng = spec.pixel_noise == 0 ? 0 : static_cast<int>(r % span) - spec.pixel_noise;
    r >>= 16;
    const int nb = spec.pixel_noise == 0 ? 0 : static_cast<int>(r % span) - spec.pixel_noise;
    p = {clamp_channel(base.r + jitter + nr), clamp_channel(base.g + jitter + ng),
         clamp_channel(base.b + jitter + nb)};
  }
  return Frame(index, spec.width, spec.height, std::move(pixels));
}

SyntheticVideoSource::SyntheticVideoSource(SyntheticSpec spec) : spec_(spec) {
  if (spec_.width == 0 || spec_.height == 0) throw ConfigError("synthetic frames need positive dimensions");
  if (spec_.frames < 0) throw ConfigError("synthetic frame count must be non-negative");
}

std::optional<Frame> SyntheticVideoSource::next() {
  if (cursor_ >= spec_.frames) return std::nullopt;
  return tracked(synthetic_frame(spec_, cursor_++));
}

}  // namespace prism
