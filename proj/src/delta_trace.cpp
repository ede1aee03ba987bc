#include "prism/delta_trace.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "prism/errors.hpp"
#include "prism/number_format.hpp"

namespace prism {

namespace {

constexpr const char* kHeader = "frame_index,delta_e00,passed_jnd,selected";

bool parse_flag(const std::string& s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw SchemaError("trace flag must be 0 or 1, got '" + s + "'");
}

double parse_real(const std::string& s) {
  double v = 0.0;
  if (!parse_double(s, v)) throw SchemaError("trace value is not a number: '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw SchemaError("trace value is not an integer: '" + s + "'");
  return v;
}

}  // namespace

DeltaTrace make_delta_trace(const DeltaSeries& series, const KeyframeResult& result) {
  DeltaTrace trace;
  trace.mu = result.mu;
  trace.sigma = result.sigma;
  trace.threshold = result.threshold;
  trace.jnd_threshold = series.jnd_threshold;
  trace.total_frames = result.total_frames;
  trace.rows.reserve(series.deltas.size());
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    const auto frame = static_cast<FrameIndex>(i) + 1;
    const bool selected =
        std::binary_search(result.keyframes.begin(), result.keyframes.end(), frame);
    trace.rows.push_back({frame, series.deltas[i], series.jnd_mask[i], selected});
  }
  return trace;
}

void write_delta_trace(std::ostream& out, const DeltaTrace& trace) {
  out << "# mu=" << format_shortest(trace.mu) << '\n'
      << "# sigma=" << format_shortest(trace.sigma) << '\n'
      << "# threshold=" << format_shortest(trace.threshold) << '\n'
      << "# jnd_threshold=" << format_shortest(trace.jnd_threshold) << '\n'
      << "# total_frames=" << trace.total_frames << '\n'
      << kHeader << '\n';
  for (const TraceRow& row : trace.rows) {
    out << row.frame_index << ',' << format_shortest(row.delta_e00) << ','
        << (row.passed_jnd ? 1 : 0) << ',' << (row.selected ? 1 : 0) << '\n';
  }
}

DeltaTrace read_delta_trace(std::istream& in) {
  DeltaTrace trace;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      if (key == "mu") {
        trace.mu = parse_real(value);
      } else if (key == "sigma") {
        trace.sigma = parse_real(value);
      } else if (key == "threshold") {
        trace.threshold = parse_real(value);
      } else if (key == "jnd_threshold") {
        trace.jnd_threshold = parse_real(value);
      } else if (key == "total_frames") {
        trace.total_frames = parse_int(value);
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) throw SchemaError("unexpected trace header: " + line);
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string idx, delta, jnd, sel;
    if (!std::getline(ss, idx, ',') || !std::getline(ss, delta, ',') ||
        !std::getline(ss, jnd, ',') || !std::getline(ss, sel)) {
      throw SchemaError("malformed trace row: " + line);
    }
    trace.rows.push_back({parse_int(idx), parse_real(delta),
                          parse_flag(jnd), parse_flag(sel)});
  }
  if (!header_seen) throw SchemaError("trace has no column header");
  return trace;
}

}  // namespace prism
