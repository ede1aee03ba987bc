#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace prism {

using FrameIndex = std::int64_t;

/// One sRGB-encoded (non-linear) 8-bit pixel.
struct Rgb8Pixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8Pixel&, const Rgb8Pixel&) = default;
};
static_assert(sizeof(Rgb8Pixel) == 3, "pixels are packed RGB24");

/// Counts decoded frames that are alive at the same time. Sources attach a
/// ResidencyToken to each frame they emit when a probe is installed.
class ResidencyProbe {
 public:
  void acquire() noexcept;
  void release() noexcept;

  [[nodiscard]] std::int64_t live() const noexcept { return live_.load(); }
  [[nodiscard]] std::int64_t peak() const noexcept { return peak_.load(); }

 private:
  std::atomic<std::int64_t> live_{0};
  std::atomic<std::int64_t> peak_{0};
};

/// RAII registration of one frame with a ResidencyProbe. Copies register a
/// new resident frame; moves transfer the registration.
class ResidencyToken {
 public:
  ResidencyToken() = default;
  explicit ResidencyToken(ResidencyProbe* probe) noexcept;
  ResidencyToken(const ResidencyToken& other) noexcept;
  ResidencyToken(ResidencyToken&& other) noexcept;
  ResidencyToken& operator=(const ResidencyToken& other) noexcept;
  ResidencyToken& operator=(ResidencyToken&& other) noexcept;
  ~ResidencyToken();

 private:
  void reset() noexcept;
  ResidencyProbe* probe_ = nullptr;
};

/// A decoded RGB image. Pixels are row-major, width * height of them.
class Frame {
 public:
  /// Throws ValidationError if the dimensions are zero or do not match the
  /// pixel count.
  Frame(FrameIndex index, std::uint32_t width, std::uint32_t height,
        std::vector<Rgb8Pixel> pixels);

  /// Uniform frame filled with one color.
  static Frame uniform(FrameIndex index, std::uint32_t width,
                       std::uint32_t height, Rgb8Pixel color);

  [[nodiscard]] FrameIndex index() const noexcept { return index_; }
  [[nodiscard]] std::uint32_t width() const noexcept { return width_; }
  [[nodiscard]] std::uint32_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t pixel_count() const noexcept { return pixels_.size(); }
  [[nodiscard]] std::span<const Rgb8Pixel> pixels() const noexcept { return pixels_; }
  [[nodiscard]] std::span<Rgb8Pixel> mutable_pixels() noexcept { return pixels_; }

  void set_index(FrameIndex index) noexcept { index_ = index; }
  void track_with(ResidencyProbe* probe) noexcept { residency_ = ResidencyToken(probe); }

 private:
  FrameIndex index_;
  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<Rgb8Pixel> pixels_;
  ResidencyToken residency_;
};

}  // namespace prism
