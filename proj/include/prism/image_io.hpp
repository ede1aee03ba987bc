#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "prism/frame.hpp"

namespace prism {

/// Decodes a binary PPM (P6, maxval 255) or a PNG, chosen by file signature.
/// PNGs are expanded to 8-bit RGB (palette, gray and alpha are converted).
[[nodiscard]] Frame read_image(const std::filesystem::path& path, FrameIndex index = 0);

[[nodiscard]] Frame read_ppm(std::istream& in, FrameIndex index = 0);
void write_ppm(std::ostream& out, const Frame& frame);
void write_ppm(const std::filesystem::path& path, const Frame& frame);
void write_png(const std::filesystem::path& path, const Frame& frame);

}  // namespace prism
