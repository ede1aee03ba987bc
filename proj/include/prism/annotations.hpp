#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/frame.hpp"

namespace prism {

struct VideoMeta {
  double fps = 0.0;
  std::int64_t frame_count = 0;
  std::string source_id;
};

/// Annotated keyframes of one video. `actual` is strictly increasing and
/// every entry lies in [0, frame_count - 1].
struct GroundTruth {
  VideoMeta meta;
  std::vector<FrameIndex> actual;
};

/// Predicted keyframes of one video.
struct Predictions {
  std::string source_id;
  std::vector<FrameIndex> predicted;
};

/// Parses {source_id, fps, frame_count, actual_frames}. Indices are sorted
/// and deduplicated. Throws SchemaError naming a missing/mistyped field and
/// ValidationError for out-of-range values.
[[nodiscard]] GroundTruth parse_ground_truth(const nlohmann::json& doc);
[[nodiscard]] GroundTruth load_ground_truth(const std::filesystem::path& path);
[[nodiscard]] nlohmann::json to_json(const GroundTruth& gt);

/// Parses {source_id, predicted_frames}. A `keyframes` array (as written by
/// the extract command) is accepted in place of predicted_frames.
[[nodiscard]] Predictions parse_predictions(const nlohmann::json& doc);
[[nodiscard]] Predictions load_predictions(const std::filesystem::path& path);

/// Reads one JSON document, or every *.json file of a directory in natural
/// order.
[[nodiscard]] std::vector<nlohmann::json> load_json_documents(const std::filesystem::path& path);

}  // namespace prism
