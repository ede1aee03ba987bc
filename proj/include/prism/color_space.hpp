#pragma once

#include "prism/frame.hpp"

namespace prism {

class BlockPool;

/// CIE 1976 L*a*b* under the D65 white. L* is nominally in [0, 100].
struct LabTriple {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const LabTriple&, const LabTriple&) = default;
};

/// D65 reference white used by the XYZ -> Lab step.
inline constexpr double kWhiteX = 0.95047;
inline constexpr double kWhiteY = 1.0;
inline constexpr double kWhiteZ = 1.08883;

/// sRGB transfer function inverse for an 8-bit code value.
[[nodiscard]] double srgb_to_linear(std::uint8_t code) noexcept;

[[nodiscard]] LabTriple srgb_to_lab(Rgb8Pixel p) noexcept;

/// Pixels per partial sum in frame_mean_lab. Fixed so the reduction order
/// does not depend on the worker count.
inline constexpr std::size_t kMeanBlockPixels = 16384;

/// Channel-wise arithmetic mean of srgb_to_lab over every pixel.
///
/// Pixels are accumulated row-major as offsets from the first pixel's Lab
/// value in blocks of kMeanBlockPixels; block partials are combined in block
/// order. The result is bit-identical for any pool size, and a uniform frame
/// yields exactly srgb_to_lab of its color.
[[nodiscard]] LabTriple frame_mean_lab(const Frame& frame, BlockPool* pool = nullptr);

}  // namespace prism
