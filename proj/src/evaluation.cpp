#include "prism/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "prism/errors.hpp"
#include "prism/number_format.hpp"

namespace prism {

std::int64_t matching_threshold(double fps, std::int64_t frame_count) {
  const double time_scaling = kMaxTimeWindowSec * (fps / (fps + kFpsDamping));
  auto threshold = static_cast<std::int64_t>(fps * time_scaling);
  const auto max_threshold = static_cast<std::int64_t>(static_cast<double>(frame_count) * kMaxWindowFraction);
  threshold = std::max(threshold, kMinMatchWindow);
  threshold = std::min(threshold, max_threshold);
  return threshold;
}

double percent_two_decimals(std::int64_t numerator, std::int64_t denominator) {
  // hundredths = round_half_up(numerator * 10000 / denominator)
  const std::int64_t hundredths = (2 * numerator * 10000 + denominator) / (2 * denominator);
  return static_cast<double>(hundredths) / 100.0;
}

MatchReport score_matching_with_window(const EvalRecord& rec, std::int64_t window) {
  MatchReport report;
  report.threshold_frames = window;
  if (rec.predicted.empty()) return report;
  for (FrameIndex pred : rec.predicted) {
    const bool hit = std::any_of(rec.actual.begin(), rec.actual.end(),
                                 [&](FrameIndex act) { return std::llabs(pred - act) <= window; });
    if (hit) ++report.matched;
  }
  report.accuracy_pct =
      percent_two_decimals(report.matched, static_cast<std::int64_t>(rec.predicted.size()));
  return report;
}

MatchReport score_matching(const EvalRecord& rec) {
  if (rec.predicted.empty() || rec.meta.fps == 0.0 || rec.meta.frame_count == 0) return {};
  return score_matching_with_window(rec, matching_threshold(rec.meta.fps, rec.meta.frame_count));
}

ColorHistogram color_histogram(const Frame& frame) {
  std::array<std::uint64_t, kHistogramSize> counts{};
  for (const Rgb8Pixel& p : frame.pixels()) {
    ++counts[p.r >> 3];
    ++counts[kBinsPerChannel + (p.g >> 3)];
    ++counts[2 * kBinsPerChannel + (p.b >> 3)];
  }
  ColorHistogram h;
  const double total = 3.0 * static_cast<double>(frame.pixel_count());
  for (std::size_t i = 0; i < kHistogramSize; ++i) h.bins[i] = static_cast<double>(counts[i]) / total;
  return h;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("cosine similarity of vectors of different length");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine similarity of a zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double cosine_similarity(const ColorHistogram& a, const ColorHistogram& b) {
  return cosine_similarity(std::span<const double>(a.bins), std::span<const double>(b.bins));
}

double fidelity(std::span<const ColorHistogram> predicted, std::span<const ColorHistogram> truth,
                FidelityMode mode) {
  if (predicted.empty() || truth.empty()) throw ValidationError("fidelity undefined");
  double worst = 0.0;
  for (const ColorHistogram& k : predicted) {
    double best = std::numeric_limits<double>::infinity();
    for (const ColorHistogram& g : truth) {
      const double cos = std::clamp(cosine_similarity(k, g), 0.0, 1.0);
      best = std::min(best, mode == FidelityMode::kDistance ? 1.0 - cos : cos);
    }
    worst = std::max(worst, best);
  }
  return 1.0 - worst;
}

double fidelity(std::span<const Frame> predicted, std::span<const Frame> truth, FidelityMode mode) {
  std::vector<ColorHistogram> hp;
  std::vector<ColorHistogram> ht;
  hp.reserve(predicted.size());
  ht.reserve(truth.size());
  for (const Frame& f : predicted) hp.push_back(color_histogram(f));
  for (const Frame& f : truth) ht.push_back(color_histogram(f));
  return fidelity(hp, ht, mode);
}

Compression compression(std::int64_t total_frames, std::int64_t keyframes) {
  if (total_frames <= 0) throw ValidationError("compression needs a positive frame count");
  if (keyframes < 0 || keyframes > total_frames) {
    throw ValidationError("keyframe count " + std::to_string(keyframes) + " outside [0, " +
                          std::to_string(total_frames) + "]");
  }
  Compression c;
  if (keyframes > 0) c.ratio = static_cast<double>(total_frames) / static_cast<double>(keyframes);
  c.pct = (1.0 - static_cast<double>(keyframes) / static_cast<double>(total_frames)) * 100.0;
  return c;
}

std::vector<ColorHistogram> histograms_at(FrameSource& frames, std::span<const FrameIndex> indices) {
  std::map<FrameIndex, std::optional<ColorHistogram>> wanted;
  for (FrameIndex i : indices) wanted.emplace(i, std::nullopt);
  std::size_t found = 0;
  while (found < wanted.size()) {
    std::optional<Frame> frame = frames.next();
    if (!frame) break;
    auto it = wanted.find(frame->index());
    if (it == wanted.end()) continue;
    it->second = color_histogram(*frame);
    ++found;
  }
  std::vector<ColorHistogram> out;
  out.reserve(indices.size());
  for (FrameIndex i : indices) {
    const auto& h = wanted.at(i);
    if (!h) throw ValidationError("frame " + std::to_string(i) + " is not in the video");
    out.push_back(*h);
  }
  return out;
}

VideoScore score_video(const GroundTruth& truth, const Predictions& predictions, FrameSource* frames,
                       FidelityMode mode) {
  VideoScore row;
  row.source_id = truth.meta.source_id;
  row.n_predicted = static_cast<std::int64_t>(predictions.predicted.size());
  row.n_actual = static_cast<std::int64_t>(truth.actual.size());
  row.match = score_matching({truth.meta, truth.actual, predictions.predicted});

  // Distinct predicted frames are what a summary actually keeps.
  std::set<FrameIndex> distinct(predictions.predicted.begin(), predictions.predicted.end());
  const auto selected = static_cast<std::int64_t>(distinct.size());
  if (truth.meta.frame_count > 0) {
    row.compression = compression(truth.meta.frame_count, std::min(selected, truth.meta.frame_count));
  }

  if (frames != nullptr && !distinct.empty() && !truth.actual.empty()) {
    std::vector<FrameIndex> needed(distinct.begin(), distinct.end());
    needed.insert(needed.end(), truth.actual.begin(), truth.actual.end());
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    const auto hists = histograms_at(*frames, needed);
    const auto lookup = [&](FrameIndex i) {
      return hists[static_cast<std::size_t>(std::lower_bound(needed.begin(), needed.end(), i) - needed.begin())];
    };
    std::vector<ColorHistogram> hp;
    std::vector<ColorHistogram> ht;
    for (FrameIndex i : distinct) hp.push_back(lookup(i));
    for (FrameIndex i : truth.actual) ht.push_back(lookup(i));
    row.fidelity = fidelity(hp, ht, mode);
  }
  return row;
}

CorpusReport evaluate_corpus(const std::vector<GroundTruth>& truths,
                             const std::vector<Predictions>& predictions,
                             const FrameProvider& provider, FidelityMode mode) {
  std::map<std::string, const GroundTruth*> by_truth;
  std::map<std::string, const Predictions*> by_pred;
  for (const auto& t : truths) by_truth[t.meta.source_id] = &t;
  for (const auto& p : predictions) by_pred[p.source_id] = &p;

  CorpusReport report;
  report.fidelity_mode = mode;
  std::set<std::string> skipped;
  for (const auto& [id, truth] : by_truth) {
    const auto it = by_pred.find(id);
    if (it == by_pred.end()) {
      skipped.insert(id);
      continue;
    }
    std::unique_ptr<FrameSource> frames = provider ? provider(truth->meta) : nullptr;
    report.rows.push_back(score_video(*truth, *it->second, frames.get(), mode));
  }
  for (const auto& [id, pred] : by_pred) {
    if (by_truth.count(id) == 0) skipped.insert(id);
  }
  report.skipped.assign(skipped.begin(), skipped.end());
  return report;
}

void write_report_csv(std::ostream& out, const CorpusReport& report) {
  out << "source_id,accuracy_pct,fidelity,compression_ratio,compression_pct,threshold_frames,"
         "n_predicted,n_actual\n";
  for (const VideoScore& r : report.rows) {
    out << r.source_id << ',' << format_fixed(r.match.accuracy_pct, 2) << ','
        << (r.fidelity ? format_shortest(*r.fidelity) : "") << ','
        << (r.compression.ratio ? format_shortest(*r.compression.ratio) : "inf") << ','
        << format_shortest(r.compression.pct) << ',' << r.match.threshold_frames << ','
        << r.n_predicted << ',' << r.n_actual << '\n';
  }
}

nlohmann::json report_summary(const CorpusReport& report) {
  using nlohmann::json;
  json rows = json::array();
  double acc = 0.0;
  double fid = 0.0;
  double ratio = 0.0;
  double pct = 0.0;
  std::size_t n_fid = 0;
  std::size_t n_ratio = 0;
  for (const VideoScore& r : report.rows) {
    rows.push_back({{"source_id", r.source_id},
                    {"accuracy_pct", r.match.accuracy_pct},
                    {"fidelity", r.fidelity ? json(*r.fidelity) : json(nullptr)},
                    {"compression_ratio", r.compression.ratio ? json(*r.compression.ratio) : json(nullptr)},
                    {"compression_pct", r.compression.pct},
                    {"threshold_frames", r.match.threshold_frames},
                    {"matched", r.match.matched},
                    {"n_predicted", r.n_predicted},
                    {"n_actual", r.n_actual}});
    acc += r.match.accuracy_pct;
    pct += r.compression.pct;
    if (r.fidelity) {
      fid += *r.fidelity;
      ++n_fid;
    }
    if (r.compression.ratio) {
      ratio += *r.compression.ratio;
      ++n_ratio;
    }
  }
  const auto mean = [](double sum, std::size_t n) { return n == 0 ? json(nullptr) : json(sum / static_cast<double>(n)); };
  return json{{"videos_scored", report.rows.size()},
              {"skipped", report.skipped},
              {"fidelity_mode", to_string(report.fidelity_mode)},
              {"histogram", {{"space", "RGB"}, {"bins_per_channel", kBinsPerChannel}, {"normalization", "L1"}}},
              {"mean",
               {{"accuracy_pct", mean(acc, report.rows.size())},
                {"fidelity", mean(fid, n_fid)},
                {"compression_ratio", mean(ratio, n_ratio)},
                {"compression_pct", mean(pct, report.rows.size())}}},
              {"videos", rows}};
}

const char* to_string(FidelityMode mode) {
  return mode == FidelityMode::kDistance ? "default" : "literal";
}

}  // namespace prism
