#include "prism/throughput.hpp"

#include <chrono>

#include "prism/errors.hpp"

namespace prism {

namespace {

using Clock = std::chrono::steady_clock;

// Accumulates the wall time spent producing frames so it can be subtracted.
class TimedSource final : public FrameSource {
 public:
  explicit TimedSource(FrameSource& inner) : inner_(inner) {}

  std::optional<Frame> next() override {
    const auto start = Clock::now();
    std::optional<Frame> frame = inner_.next();
    spent_ += Clock::now() - start;
    if (frame) {
      ++count_;
      width_ = frame->width();
      height_ = frame->height();
    }
    return frame;
  }

  Clock::duration spent_{};
  std::int64_t count_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;

 private:
  FrameSource& inner_;
};

}  // namespace

ThroughputReport measure_throughput(FrameSource& frames, const DetectorConfig& cfg, unsigned threads) {
  KeyframeDetector detector(cfg, threads);
  TimedSource timed(frames);

  const auto start = Clock::now();
  KeyframeResult result = detector.detect(timed);
  const auto total = Clock::now() - start;

  if (timed.count_ < 2) throw ValidationError("need >= 2 frames");

  ThroughputReport report;
  report.frames = timed.count_;
  report.width = timed.width_;
  report.height = timed.height_;
  report.elapsed_s = std::chrono::duration<double>(total - timed.spent_).count();
  report.fps = report.elapsed_s > 0.0 ? static_cast<double>(report.frames) / report.elapsed_s : 0.0;
  report.result = std::move(result);
  return report;
}

}  // namespace prism
