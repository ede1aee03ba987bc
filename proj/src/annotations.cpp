#include "prism/annotations.hpp"

#include <algorithm>
#include <fstream>

#include "prism/errors.hpp"
#include "prism/frame_source.hpp"

namespace prism {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* field) {
  if (!doc.is_object()) throw SchemaError("annotation document is not a JSON object");
  const auto it = doc.find(field);
  if (it == doc.end()) throw SchemaError(std::string("missing field '") + field + "'");
  return *it;
}

std::vector<FrameIndex> index_array(const json& value, const char* field) {
  if (!value.is_array()) throw SchemaError(std::string("field '") + field + "' must be an array");
  std::vector<FrameIndex> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number_integer()) {
      throw SchemaError(std::string("field '") + field + "' must hold integers");
    }
    const auto idx = v.get<std::int64_t>();
    if (idx < 0) throw ValidationError(std::string("negative frame index in '") + field + "'");
    out.push_back(idx);
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace

GroundTruth parse_ground_truth(const json& doc) {
  GroundTruth gt;
  const json& sid = require(doc, "source_id");
  if (!sid.is_string()) throw SchemaError("field 'source_id' must be a string");
  gt.meta.source_id = sid.get<std::string>();

  const json& fps = require(doc, "fps");
  if (!fps.is_number()) throw SchemaError("field 'fps' must be a number");
  gt.meta.fps = fps.get<double>();
  if (!(gt.meta.fps >= 0.0)) throw ValidationError("fps must be non-negative");

  const json& fc = require(doc, "frame_count");
  if (!fc.is_number_integer()) throw SchemaError("field 'frame_count' must be an integer");
  gt.meta.frame_count = fc.get<std::int64_t>();
  if (gt.meta.frame_count < 0) throw ValidationError("frame_count must be non-negative");

  gt.actual = index_array(require(doc, "actual_frames"), "actual_frames");
  std::sort(gt.actual.begin(), gt.actual.end());
  gt.actual.erase(std::unique(gt.actual.begin(), gt.actual.end()), gt.actual.end());
  if (!gt.actual.empty() && gt.actual.back() >= gt.meta.frame_count) {
    throw ValidationError("actual frame " + std::to_string(gt.actual.back()) +
                          " out of range for frame_count " + std::to_string(gt.meta.frame_count));
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  try {
    return parse_ground_truth(read_json_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json to_json(const GroundTruth& gt) {
  return json{{"source_id", gt.meta.source_id},
              {"fps", gt.meta.fps},
              {"frame_count", gt.meta.frame_count},
              {"actual_frames", gt.actual}};
}

Predictions parse_predictions(const json& doc) {
  Predictions p;
  const json& sid = require(doc, "source_id");
  if (!sid.is_string()) throw SchemaError("field 'source_id' must be a string");
  p.source_id = sid.get<std::string>();
  if (doc.contains("predicted_frames")) {
    p.predicted = index_array(doc.at("predicted_frames"), "predicted_frames");
  } else if (doc.contains("keyframes")) {
    p.predicted = index_array(doc.at("keyframes"), "keyframes");
  } else {
    throw SchemaError("missing field 'predicted_frames'");
  }
  return p;
}

Predictions load_predictions(const std::filesystem::path& path) {
  try {
    return parse_predictions(read_json_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::vector<json> load_json_documents(const std::filesystem::path& path) {
  std::vector<json> docs;
  if (!std::filesystem::is_directory(path)) {
    docs.push_back(read_json_file(path));
    return docs;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return natural_less(a.filename().string(), b.filename().string());
  });
  for (const auto& f : files) docs.push_back(read_json_file(f));
  return docs;
}

}  // namespace prism
