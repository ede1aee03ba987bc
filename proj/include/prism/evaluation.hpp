#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/annotations.hpp"
#include "prism/frame_source.hpp"

namespace prism {

// ---------------------------------------------------------------------------
// Frame matching accuracy

struct EvalRecord {
  VideoMeta meta;
  std::vector<FrameIndex> actual;
  std::vector<FrameIndex> predicted;
};

struct MatchReport {
  std::int64_t threshold_frames = 0;
  std::int64_t matched = 0;
  double accuracy_pct = 0.0;
};

inline constexpr double kMaxTimeWindowSec = 10.0;
inline constexpr double kFpsDamping = 10.0;
inline constexpr std::int64_t kMinMatchWindow = 30;
inline constexpr double kMaxWindowFraction = 0.03;

/// Matching window in frames: trunc(fps * 10 * fps / (fps + 10)), raised to
/// 30 and then capped at trunc(0.03 * frame_count). The cap wins when the
/// two bounds cross.
[[nodiscard]] std::int64_t matching_threshold(double fps, std::int64_t frame_count);

/// Percentage of predictions within the matching window of some actual
/// keyframe, rounded half away from zero to two decimals. Empty predictions,
/// fps == 0 or frame_count == 0 score 0 with a window of 0.
[[nodiscard]] MatchReport score_matching(const EvalRecord& rec);

/// Same scoring with an explicit window, bypassing the fps rule.
[[nodiscard]] MatchReport score_matching_with_window(const EvalRecord& rec, std::int64_t window);

/// round(numerator / denominator * 100, 2) computed exactly on integers,
/// ties away from zero.
[[nodiscard]] double percent_two_decimals(std::int64_t numerator, std::int64_t denominator);

// ---------------------------------------------------------------------------
// Fidelity

inline constexpr std::size_t kBinsPerChannel = 32;
inline constexpr std::size_t kHistogramSize = 3 * kBinsPerChannel;

/// R, G and B 32-bin histograms concatenated, L1-normalized over all three
/// blocks (each block carries 1/3 of the mass).
struct ColorHistogram {
  std::array<double, kHistogramSize> bins{};
};

[[nodiscard]] ColorHistogram color_histogram(const Frame& frame);

/// Throws ValidationError if either vector is all zeros.
[[nodiscard]] double cosine_similarity(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double cosine_similarity(const ColorHistogram& a, const ColorHistogram& b);

enum class FidelityMode {
  kDistance,  ///< 1 - max_i min_j (1 - cos(k_i, g_j)); identical sets score 1
  kLiteral    ///< 1 - max_i min_j cos(k_i, g_j), as typeset; for auditing
};

/// Throws ValidationError("fidelity undefined") if either side is empty.
[[nodiscard]] double fidelity(std::span<const ColorHistogram> predicted,
                              std::span<const ColorHistogram> truth,
                              FidelityMode mode = FidelityMode::kDistance);
[[nodiscard]] double fidelity(std::span<const Frame> predicted, std::span<const Frame> truth,
                              FidelityMode mode = FidelityMode::kDistance);

// ---------------------------------------------------------------------------
// Compression

struct Compression {
  /// total / keyframes; nullopt when no keyframe was selected.
  std::optional<double> ratio;
  /// (1 - keyframes / total) * 100.
  double pct = 0.0;
};

/// Throws ValidationError if total_frames <= 0 or keyframes is outside
/// [0, total_frames].
[[nodiscard]] Compression compression(std::int64_t total_frames, std::int64_t keyframes);

// ---------------------------------------------------------------------------
// Corpus report

struct VideoScore {
  std::string source_id;
  MatchReport match;
  std::optional<double> fidelity;
  Compression compression;
  std::int64_t n_predicted = 0;
  std::int64_t n_actual = 0;
};

struct CorpusReport {
  std::vector<VideoScore> rows;       ///< sorted by source_id
  std::vector<std::string> skipped;   ///< ids without a counterpart, sorted
  FidelityMode fidelity_mode = FidelityMode::kDistance;
};

/// Opens the frames of a video, or returns nullptr when none are available
/// (fidelity is then left empty).
using FrameProvider = std::function<std::unique_ptr<FrameSource>(const VideoMeta& meta)>;

/// Histograms of the requested frames, read in one streaming pass. Throws
/// ValidationError if an index is not present in the stream.
[[nodiscard]] std::vector<ColorHistogram> histograms_at(FrameSource& frames,
                                                        std::span<const FrameIndex> indices);

/// Scores one video. Fidelity is computed when frames are provided and both
/// keyframe lists are non-empty.
[[nodiscard]] VideoScore score_video(const GroundTruth& truth, const Predictions& predictions,
                                     FrameSource* frames, FidelityMode mode);

/// Pairs ground truth and predictions by source_id; unpaired ids on either
/// side are recorded as skipped.
[[nodiscard]] CorpusReport evaluate_corpus(const std::vector<GroundTruth>& truths,
                                           const std::vector<Predictions>& predictions,
                                           const FrameProvider& provider, FidelityMode mode);

/// source_id,accuracy_pct,fidelity,compression_ratio,compression_pct,
/// threshold_frames,n_predicted,n_actual
void write_report_csv(std::ostream& out, const CorpusReport& report);

/// Per-video rows, skipped ids, and unweighted means across scored videos.
[[nodiscard]] nlohmann::json report_summary(const CorpusReport& report);

[[nodiscard]] const char* to_string(FidelityMode mode);

}  // namespace prism
