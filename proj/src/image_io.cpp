#include "prism/image_io.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "prism/errors.hpp"

namespace prism {

namespace {

// Skips whitespace and '#' comments between PPM header tokens.
void skip_header_space(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* what) {
  skip_header_space(in);
  long v = -1;
  if (!(in >> v) || v <= 0) throw IoError(std::string("bad PPM header field: ") + what);
  return v;
}

Frame read_png(const std::filesystem::path& path, FrameIndex index) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw IoError("cannot decode " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<Rgb8Pixel> pixels(static_cast<std::size_t>(image.width) * image.height);
  if (png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr) == 0) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode " + path.string() + ": " + msg);
  }
  return Frame(index, image.width, image.height, std::move(pixels));
}

}  // namespace

Frame read_ppm(std::istream& in, FrameIndex index) {
  std::array<char, 2> magic{};
  if (!in.read(magic.data(), 2) || magic[0] != 'P' || magic[1] != '6') {
    throw IoError("not a binary PPM (P6)");
  }
  const long width = read_header_int(in, "width");
  const long height = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (maxval != 255) throw IoError("unsupported PPM maxval " + std::to_string(maxval));
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) throw IoError("bad PPM header terminator");

  std::vector<Rgb8Pixel> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  const auto bytes = static_cast<std::streamsize>(pixels.size() * sizeof(Rgb8Pixel));
  if (!in.read(reinterpret_cast<char*>(pixels.data()), bytes)) {
    throw IoError("truncated PPM raster");
  }
  return Frame(index, static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
               std::move(pixels));
}

Frame read_image(const std::filesystem::path& path, FrameIndex index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0) {
    in.close();
    return read_png(path, index);
  }
  in.clear();
  in.seekg(0);
  try {
    return read_ppm(in, index);
  } catch (const Error& e) {
    throw IoError("cannot decode " + path.string() + ": " + e.what());
  }
}

void write_ppm(std::ostream& out, const Frame& frame) {
  out << "P6\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  const auto px = frame.pixels();
  out.write(reinterpret_cast<const char*>(px.data()),
            static_cast<std::streamsize>(px.size() * sizeof(Rgb8Pixel)));
}

void write_ppm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_ppm(out, frame);
  if (!out) throw IoError("write failed for " + path.string());
}

void write_png(const std::filesystem::path& path, const Frame& frame) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = frame.width();
  image.height = frame.height();
  image.format = PNG_FORMAT_RGB;
  if (png_image_write_to_file(&image, path.c_str(), 0, frame.pixels().data(), 0, nullptr) == 0) {
    throw IoError("cannot write " + path.string() + ": " + image.message);
  }
}

}  // namespace prism
