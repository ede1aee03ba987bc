#include "prism/frame_source.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <string>

#include "prism/errors.hpp"
#include "prism/image_io.hpp"

namespace prism {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string dims(std::uint32_t w, std::uint32_t h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace

bool natural_less(const std::string& lhs, const std::string& rhs) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    const bool ld = std::isdigit(static_cast<unsigned char>(lhs[i])) != 0;
    const bool rd = std::isdigit(static_cast<unsigned char>(rhs[j])) != 0;
    if (ld && rd) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[ie]))) ++ie;
      while (je < rhs.size() && std::isdigit(static_cast<unsigned char>(rhs[je]))) ++je;
      // Compare digit runs by value: strip leading zeros, then length, then text.
      std::size_t iz = i;
      std::size_t jz = j;
      while (iz + 1 < ie && lhs[iz] == '0') ++iz;
      while (jz + 1 < je && rhs[jz] == '0') ++jz;
      const std::size_t il = ie - iz;
      const std::size_t jl = je - jz;
      if (il != jl) return il < jl;
      const int cmp = lhs.compare(iz, il, rhs, jz, jl);
      if (cmp != 0) return cmp < 0;
      // Equal value: fewer leading zeros first keeps the order total.
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (lhs[i] != rhs[j]) return static_cast<unsigned char>(lhs[i]) < static_cast<unsigned char>(rhs[j]);
      ++i;
      ++j;
    }
  }
  return lhs.size() - i < rhs.size() - j;
}

ImageSequenceSource::ImageSequenceSource(const std::filesystem::path& dir, const std::string& pattern) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::string ext = lower(entry.path().extension().string());
    if (ext != ".png" && ext != ".ppm") continue;
    if (fnmatch(pattern.c_str(), name.c_str(), 0) != 0) continue;
    files_.push_back(entry.path());
  }
  if (files_.empty()) throw IoError("no frames");
  std::sort(files_.begin(), files_.end(), [](const auto& a, const auto& b) {
    return natural_less(a.filename().string(), b.filename().string());
  });
}

std::optional<Frame> ImageSequenceSource::next() {
  if (cursor_ >= files_.size()) return std::nullopt;
  const auto index = static_cast<FrameIndex>(cursor_);
  Frame frame = read_image(files_[cursor_], index);
  if (cursor_ == 0) {
    width_ = frame.width();
    height_ = frame.height();
  } else if (frame.width() != width_ || frame.height() != height_) {
    throw IoError("dimension mismatch: " + files_.front().filename().string() + " is " +
                  dims(width_, height_) + " but " + files_[cursor_].filename().string() +
                  " is " + dims(frame.width(), frame.height()));
  }
  ++cursor_;
  return tracked(std::move(frame));
}

RawRgbPipeSource::RawRgbPipeSource(std::istream& in, int width, int height) : in_(&in) {
  check_dims(width, height);
}

RawRgbPipeSource::RawRgbPipeSource(const std::filesystem::path& path, int width, int height)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()) {
  check_dims(width, height);
  if (!*owned_) throw IoError("cannot open " + path.string());
}

void RawRgbPipeSource::check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw ConfigError("raw pipe needs positive --width and --height, got " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
  width_ = static_cast<std::uint32_t>(width);
  height_ = static_cast<std::uint32_t>(height);
  buffer_.resize(static_cast<std::size_t>(width_) * height_ * sizeof(Rgb8Pixel));
}

std::optional<Frame> RawRgbPipeSource::next() {
  in_->read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  const auto got = static_cast<std::size_t>(in_->gcount());
  if (got == 0) return std::nullopt;
  if (got != buffer_.size()) throw IoError("partial frame at byte " + std::to_string(offset_));
  offset_ += got;

  std::vector<Rgb8Pixel> pixels(static_cast<std::size_t>(width_) * height_);
  std::memcpy(pixels.data(), buffer_.data(), buffer_.size());
  return tracked(Frame(index_++, width_, height_, std::move(pixels)));
}

BufferedFrameSource::BufferedFrameSource(std::vector<Frame> frames) : frames_(std::move(frames)) {
  for (std::size_t i = 0; i < frames_.size(); ++i) frames_[i].set_index(static_cast<FrameIndex>(i));
}

std::optional<Frame> BufferedFrameSource::next() {
  if (cursor_ >= frames_.size()) return std::nullopt;
  return tracked(frames_[cursor_++]);
}

}  // namespace prism
