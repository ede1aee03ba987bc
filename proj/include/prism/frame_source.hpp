#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prism/frame.hpp"

namespace prism {

/// Pull-based stream of frames with consecutive indices starting at 0.
/// A source never holds more than one decoded frame of its own; whatever the
/// caller keeps alive is the caller's business.
class FrameSource {
 public:
  virtual ~FrameSource() = default;

  /// Next frame, or nullopt at end of stream.
  virtual std::optional<Frame> next() = 0;

  /// Every frame emitted afterwards registers with the probe.
  void attach_probe(ResidencyProbe* probe) noexcept { probe_ = probe; }

 protected:
  Frame tracked(Frame frame) const {
    frame.track_with(probe_);
    return frame;
  }

 private:
  ResidencyProbe* probe_ = nullptr;
};

/// Numeric-aware filename comparison: runs of digits compare by value, so
/// "frame2.ppm" sorts before "frame10.ppm".
[[nodiscard]] bool natural_less(const std::string& lhs, const std::string& rhs);

/// PNG / binary PPM files of one directory, in natural filename order.
class ImageSequenceSource final : public FrameSource {
 public:
  /// `pattern` is an fnmatch-style glob applied to file names; only .png and
  /// .ppm files are considered. Throws IoError("no frames") if nothing
  /// matches and IoError if the directory cannot be listed.
  explicit ImageSequenceSource(const std::filesystem::path& dir, const std::string& pattern = "*");

  std::optional<Frame> next() override;

  [[nodiscard]] std::size_t size() const noexcept { return files_.size(); }
  [[nodiscard]] const std::vector<std::filesystem::path>& files() const noexcept { return files_; }

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t cursor_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
};

/// Packed RGB24 frames, frame-major, no headers, read until EOF.
class RawRgbPipeSource final : public FrameSource {
 public:
  /// Reads from a stream owned by the caller.
  RawRgbPipeSource(std::istream& in, int width, int height);
  /// Opens and owns a file ("-" is not handled here; pass std::cin instead).
  RawRgbPipeSource(const std::filesystem::path& path, int width, int height);

  std::optional<Frame> next() override;

 private:
  void check_dims(int width, int height);

  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::uint64_t offset_ = 0;
  FrameIndex index_ = 0;
  std::vector<char> buffer_;
};

/// Serves frames that are already in memory, re-indexed 0..N-1. Used for
/// pre-buffered benchmarks and tests.
class BufferedFrameSource final : public FrameSource {
 public:
  explicit BufferedFrameSource(std::vector<Frame> frames);
  std::optional<Frame> next() override;
  void rewind() noexcept { cursor_ = 0; }

 private:
  std::vector<Frame> frames_;
  std::size_t cursor_ = 0;
};

}  // namespace prism
