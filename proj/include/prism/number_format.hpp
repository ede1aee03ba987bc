#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace prism {

/// Shortest decimal text that parses back to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed-point text with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals) {
  char buf[128];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

/// Strict full-string parse; returns false on trailing garbage.
inline bool parse_double(const std::string& text, double& out) {
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace prism
