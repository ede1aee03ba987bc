#include "prism/frame.hpp"

#include <string>
#include <utility>

#include "prism/errors.hpp"

namespace prism {

void ResidencyProbe::acquire() noexcept {
  const std::int64_t now = live_.fetch_add(1) + 1;
  std::int64_t prev = peak_.load();
  while (now > prev && !peak_.compare_exchange_weak(prev, now)) {
  }
}

void ResidencyProbe::release() noexcept { live_.fetch_sub(1); }

ResidencyToken::ResidencyToken(ResidencyProbe* probe) noexcept : probe_(probe) {
  if (probe_ != nullptr) probe_->acquire();
}

ResidencyToken::ResidencyToken(const ResidencyToken& other) noexcept
    : ResidencyToken(other.probe_) {}

ResidencyToken::ResidencyToken(ResidencyToken&& other) noexcept
    : probe_(std::exchange(other.probe_, nullptr)) {}

ResidencyToken& ResidencyToken::operator=(const ResidencyToken& other) noexcept {
  if (this != &other) {
    reset();
    probe_ = other.probe_;
    if (probe_ != nullptr) probe_->acquire();
  }
  return *this;
}

ResidencyToken& ResidencyToken::operator=(ResidencyToken&& other) noexcept {
  if (this != &other) {
    reset();
    probe_ = std::exchange(other.probe_, nullptr);
  }
  return *this;
}

ResidencyToken::~ResidencyToken() { reset(); }

void ResidencyToken::reset() noexcept {
  if (probe_ != nullptr) probe_->release();
  probe_ = nullptr;
}

Frame::Frame(FrameIndex index, std::uint32_t width, std::uint32_t height,
             std::vector<Rgb8Pixel> pixels)
    : index_(index), width_(width), height_(height), pixels_(std::move(pixels)) {
  if (index_ < 0) throw ValidationError("frame index must be non-negative");
  if (width_ == 0 || height_ == 0) {
    throw ValidationError("frame dimensions must be positive, got " + std::to_string(width_) +
                          "x" + std::to_string(height_));
  }
  const auto expected = static_cast<std::size_t>(width_) * height_;
  if (pixels_.size() != expected) {
    throw ValidationError("frame pixel buffer has " + std::to_string(pixels_.size()) +
                          " pixels, expected " + std::to_string(expected));
  }
}

Frame Frame::uniform(FrameIndex index, std::uint32_t width, std::uint32_t height,
                     Rgb8Pixel color) {
  return Frame(index, width, height,
               std::vector<Rgb8Pixel>(static_cast<std::size_t>(width) * height, color));
}

}  // namespace prism
