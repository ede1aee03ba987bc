#include "prism/color_space.hpp"

#include <array>
#include <cmath>

#include "prism/errors.hpp"
#include "prism/parallel.hpp"

namespace prism {

namespace {

// sRGB primaries adapted to the (0.95047, 1, 1.08883) white at full double
// precision. Agrees with the usual 7-digit table to its last digit.
constexpr double kM[3][3] = {
    {0.41245643908969226, 0.35757607764390892, 0.18043748326639891},
    {0.21267285140562256, 0.71515215528781784, 0.072174993306559562},
    {0.019333895582329303, 0.11919202588130294, 0.95030407853636767},
};

constexpr double kDelta = 6.0 / 29.0;
constexpr double kDeltaCubed = kDelta * kDelta * kDelta;

double linearize(double c) noexcept {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) noexcept {
  return t > kDeltaCubed ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = linearize(i / 255.0);
    return t;
  }();
  return table;
}

struct LabSum {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

}  // namespace

double srgb_to_linear(std::uint8_t code) noexcept { return linear_table()[code]; }

LabTriple srgb_to_lab(Rgb8Pixel p) noexcept {
  const auto& lin = linear_table();
  const double r = lin[p.r];
  const double g = lin[p.g];
  const double b = lin[p.b];

  const double x = kM[0][0] * r + kM[0][1] * g + kM[0][2] * b;
  const double y = kM[1][0] * r + kM[1][1] * g + kM[1][2] * b;
  const double z = kM[2][0] * r + kM[2][1] * g + kM[2][2] * b;

  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabTriple frame_mean_lab(const Frame& frame, BlockPool* pool) {
  const auto pixels = frame.pixels();
  if (pixels.empty()) throw ValidationError("frame has no pixels");

  const LabTriple origin = srgb_to_lab(pixels.front());
  const std::size_t n = pixels.size();
  const std::size_t blocks = (n + kMeanBlockPixels - 1) / kMeanBlockPixels;
  std::vector<LabSum> partials(blocks);

  auto sum_block = [&](std::size_t block) {
    const std::size_t begin = block * kMeanBlockPixels;
    const std::size_t end = std::min(n, begin + kMeanBlockPixels);
    LabSum s;
    for (std::size_t i = begin; i < end; ++i) {
      const LabTriple v = srgb_to_lab(pixels[i]);
      s.l += v.l - origin.l;
      s.a += v.a - origin.a;
      s.b += v.b - origin.b;
    }
    partials[block] = s;
  };

  if (pool != nullptr && pool->threads() > 1 && blocks > 1) {
    pool->run(blocks, sum_block);
  } else {
    for (std::size_t i = 0; i < blocks; ++i) sum_block(i);
  }

  LabSum total;
  for (const LabSum& s : partials) {
    total.l += s.l;
    total.a += s.a;
    total.b += s.b;
  }
  const auto count = static_cast<double>(n);
  return {origin.l + total.l / count, origin.a + total.a / count,
          origin.b + total.b / count};
}

}  // namespace prism
