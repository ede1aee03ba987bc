#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures/frame_matching_cases.hpp"
#include "prism/errors.hpp"
#include "prism/evaluation.hpp"
#include "prism/synthetic.hpp"
#include "prism/throughput.hpp"
#include "test_support.hpp"

namespace prism {
namespace {

TEST(MatchingThreshold, HandTraces) {
  EXPECT_EQ(matching_threshold(30, 10000), 225);
  EXPECT_EQ(matching_threshold(30, 500), 15);
  EXPECT_EQ(matching_threshold(60, 100000), 514);
}

TEST(MatchingThreshold, AtLeastOneFrameFrom34Frames) {
  for (double fps : {0.5, 1.0, 23.976, 30.0, 240.0}) {
    for (std::int64_t n = 34; n < 2000; n += 7) EXPECT_GE(matching_threshold(fps, n), 1) << fps << " " << n;
  }
}

TEST(ScoreMatching, HandTracedTable) {
  for (const auto& c : testing::matching_cases()) {
    const MatchReport r = score_matching({{c.fps, c.frame_count, "v"}, c.actual, c.predicted});
    EXPECT_EQ(r.threshold_frames, c.threshold) << c.name;
    EXPECT_EQ(r.matched, c.matched) << c.name;
    EXPECT_EQ(r.accuracy_pct, c.accuracy_pct) << c.name;
  }
}

TEST(ScoreMatching, PercentRounding) {
  EXPECT_EQ(percent_two_decimals(1, 32), 3.13);
  EXPECT_EQ(percent_two_decimals(2, 3), 66.67);
  EXPECT_EQ(percent_two_decimals(1, 3), 33.33);
  EXPECT_EQ(percent_two_decimals(1, 8), 12.5);
  EXPECT_EQ(percent_two_decimals(7, 7), 100.0);
  EXPECT_EQ(percent_two_decimals(0, 5), 0.0);
  EXPECT_EQ(percent_two_decimals(1, 160000), 0.0);   // 0.000625 %
  EXPECT_EQ(percent_two_decimals(1, 20000), 0.01);   // 0.005 % rounds up
}

TEST(ScoreMatchingProperty, PermutationInvariantAndMonotoneInWindow) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    EvalRecord rec;
    rec.meta = {static_cast<double>(1 + rng() % 60), static_cast<std::int64_t>(100 + rng() % 20000), "v"};
    for (int i = 0; i < static_cast<int>(rng() % 10); ++i) rec.actual.push_back(static_cast<FrameIndex>(rng() % rec.meta.frame_count));
    for (int i = 0; i < 1 + static_cast<int>(rng() % 10); ++i) rec.predicted.push_back(static_cast<FrameIndex>(rng() % rec.meta.frame_count));

    const MatchReport base = score_matching(rec);
    EvalRecord shuffled = rec;
    std::shuffle(shuffled.actual.begin(), shuffled.actual.end(), rng);
    std::shuffle(shuffled.predicted.begin(), shuffled.predicted.end(), rng);
    const MatchReport again = score_matching(shuffled);
    EXPECT_EQ(again.matched, base.matched);
    EXPECT_EQ(again.accuracy_pct, base.accuracy_pct);

    double previous = -1.0;
    for (std::int64_t w = 0; w < 2000; w += 97) {
      const double acc = score_matching_with_window(rec, w).accuracy_pct;
      EXPECT_GE(acc, previous);
      previous = acc;
    }
  }
}

TEST(ColorHistogram, UniformExtremes) {
  const ColorHistogram black = color_histogram(Frame::uniform(0, 5, 5, {0, 0, 0}));
  const ColorHistogram white = color_histogram(Frame::uniform(0, 5, 5, {255, 255, 255}));
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(black.bins[c * kBinsPerChannel], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(white.bins[c * kBinsPerChannel + 31], 1.0 / 3.0);
  }
  EXPECT_EQ(cosine_similarity(black, white), 0.0);
}

TEST(ColorHistogram, BinEdges) {
  const ColorHistogram h = color_histogram(Frame(0, 2, 1, {{7, 8, 255}, {8, 15, 248}}));
  EXPECT_DOUBLE_EQ(h.bins[0], 1.0 / 6.0);                          // r=7
  EXPECT_DOUBLE_EQ(h.bins[1], 1.0 / 6.0);                          // r=8
  EXPECT_DOUBLE_EQ(h.bins[kBinsPerChannel + 1], 2.0 / 6.0);        // g=8,15
  EXPECT_DOUBLE_EQ(h.bins[2 * kBinsPerChannel + 31], 2.0 / 6.0);   // b=255,248
}

TEST(ColorHistogramProperty, MassIsOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Frame f = testing::random_frame(rng, 1 + rng() % 40, 1 + rng() % 40);
    const ColorHistogram h = color_histogram(f);
    double sum = 0.0;
    for (double b : h.bins) {
      EXPECT_GE(b, 0.0);
      sum += b;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(CosineSimilarity, MatchesNaiveReference) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const ColorHistogram a = color_histogram(testing::random_frame(rng, 9, 7));
    const ColorHistogram b = color_histogram(testing::random_frame(rng, 9, 7));
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < kHistogramSize; ++i) {
      dot += static_cast<long double>(a.bins[i]) * b.bins[i];
      na += static_cast<long double>(a.bins[i]) * a.bins[i];
      nb += static_cast<long double>(b.bins[i]) * b.bins[i];
    }
    const double ref = static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
    EXPECT_NEAR(cosine_similarity(a, b), ref, 1e-12);
    EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-12);
  }
}

TEST(CosineSimilarity, ZeroVectorIsAnError) {
  const std::vector<double> zero(4, 0.0);
  const std::vector<double> one(4, 1.0);
  EXPECT_THROW((void)cosine_similarity(zero, one), ValidationError);
}

TEST(Fidelity, DefaultAndLiteralModes) {
  const Frame black = Frame::uniform(0, 4, 4, {0, 0, 0});
  const Frame white = Frame::uniform(0, 4, 4, {255, 255, 255});
  const std::vector<Frame> b{black};
  const std::vector<Frame> w{white};
  EXPECT_NEAR(fidelity(b, b), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fidelity(b, w), 0.0);
  EXPECT_NEAR(fidelity(b, b, FidelityMode::kLiteral), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(fidelity(b, w, FidelityMode::kLiteral), 1.0);
}

TEST(Fidelity, WorstPredictionDominates) {
  // One perfect prediction and one orthogonal one: the semi-Hausdorff
  // aggregate takes the worst predicted frame.
  const Frame black = Frame::uniform(0, 4, 4, {0, 0, 0});
  const Frame white = Frame::uniform(0, 4, 4, {255, 255, 255});
  const std::vector<Frame> predicted{black, white};
  const std::vector<Frame> truth{black};
  EXPECT_DOUBLE_EQ(fidelity(predicted, truth), 0.0);
  const std::vector<Frame> both{white, black};
  EXPECT_NEAR(fidelity(predicted, both), 1.0, 1e-12);
}

TEST(Fidelity, EmptyIsUndefined) {
  const std::vector<ColorHistogram> none;
  const std::vector<ColorHistogram> one{color_histogram(Frame::uniform(0, 1, 1, {}))};
  try {
    (void)fidelity(none, one);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "fidelity undefined");
  }
  EXPECT_THROW((void)fidelity(one, none), ValidationError);
}

TEST(FidelityProperty, SubsetOfTruthScoresOne) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ColorHistogram> truth;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 6); ++i) truth.push_back(color_histogram(testing::random_frame(rng, 6, 6)));
    std::vector<ColorHistogram> predicted;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 6); ++i) predicted.push_back(truth[rng() % truth.size()]);
    EXPECT_NEAR(fidelity(predicted, truth), 1.0, 1e-12);
    const double f = fidelity(predicted, truth, FidelityMode::kLiteral);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Compression, DirectArithmetic) {
  Compression c = compression(1000, 10);
  EXPECT_DOUBLE_EQ(*c.ratio, 100.0);
  EXPECT_DOUBLE_EQ(c.pct, 99.0);
  c = compression(1000, 1000);
  EXPECT_DOUBLE_EQ(*c.ratio, 1.0);
  EXPECT_DOUBLE_EQ(c.pct, 0.0);
  c = compression(200, 1);
  EXPECT_DOUBLE_EQ(*c.ratio, 200.0);
  EXPECT_DOUBLE_EQ(c.pct, 99.5);
  c = compression(50, 0);
  EXPECT_FALSE(c.ratio);
  EXPECT_DOUBLE_EQ(c.pct, 100.0);
}

TEST(Compression, Guards) {
  EXPECT_THROW((void)compression(0, 0), ValidationError);
  EXPECT_THROW((void)compression(10, 11), ValidationError);
  EXPECT_THROW((void)compression(10, -1), ValidationError);
}

TEST(HistogramsAt, StreamsRequestedFrames) {
  SyntheticSpec spec;
  spec.frames = 50;
  spec.width = 8;
  spec.height = 8;
  SyntheticVideoSource src(spec);
  const std::vector<FrameIndex> wanted{3, 41};
  const auto h = histograms_at(src, wanted);
  ASSERT_EQ(h.size(), 2U);
  EXPECT_EQ(h[1].bins, color_histogram(synthetic_frame(spec, 41)).bins);

  SyntheticVideoSource again(spec);
  const std::vector<FrameIndex> missing{60};
  EXPECT_THROW((void)histograms_at(again, missing), ValidationError);
}

TEST(CorpusReport, PairsBySourceIdAndSkipsTheRest) {
  GroundTruth a{{30, 10000, "a"}, {200}};
  GroundTruth b{{30, 10000, "b"}, {500}};
  Predictions pa{"a", {100}};
  Predictions pz{"z", {1}};
  const CorpusReport r = evaluate_corpus({b, a}, {pz, pa}, {}, FidelityMode::kDistance);
  ASSERT_EQ(r.rows.size(), 1U);
  EXPECT_EQ(r.rows[0].source_id, "a");
  EXPECT_EQ(r.rows[0].match.accuracy_pct, 100.0);
  EXPECT_FALSE(r.rows[0].fidelity);
  EXPECT_EQ(r.skipped, (std::vector<std::string>{"b", "z"}));

  std::ostringstream csv;
  write_report_csv(csv, r);
  EXPECT_EQ(csv.str(),
            "source_id,accuracy_pct,fidelity,compression_ratio,compression_pct,threshold_frames,n_predicted,n_actual\n"
            "a,100.00,,10000,99.99,225,1,1\n");
  const auto summary = report_summary(r);
  EXPECT_EQ(summary["mean"]["accuracy_pct"], 100.0);
  EXPECT_TRUE(summary["mean"]["fidelity"].is_null());
}

TEST(CorpusReport, FidelityFromProvidedFrames) {
  SyntheticSpec spec;
  spec.frames = 60;
  spec.width = 8;
  spec.height = 8;
  GroundTruth gt{{30, 60, "syn"}, {20, 40}};
  Predictions same{"syn", {20, 40}};
  FrameProvider provider = [&](const VideoMeta&) { return std::make_unique<SyntheticVideoSource>(spec); };
  const CorpusReport r = evaluate_corpus({gt}, {same}, provider, FidelityMode::kDistance);
  ASSERT_EQ(r.rows.size(), 1U);
  ASSERT_TRUE(r.rows[0].fidelity);
  EXPECT_NEAR(*r.rows[0].fidelity, 1.0, 1e-12);
  EXPECT_EQ(r.rows[0].match.accuracy_pct, 100.0);
  EXPECT_DOUBLE_EQ(*r.rows[0].compression.ratio, 30.0);
}

TEST(Throughput, ReportShape) {
  SyntheticSpec spec;
  spec.frames = 40;
  spec.width = 32;
  spec.height = 24;
  SyntheticVideoSource src(spec);
  const ThroughputReport r = measure_throughput(src, DetectorConfig{}, 1);
  EXPECT_EQ(r.frames, 40);
  EXPECT_EQ(r.width, 32U);
  EXPECT_EQ(r.height, 24U);
  EXPECT_GT(r.elapsed_s, 0.0);
  EXPECT_NEAR(r.fps, 40.0 / r.elapsed_s, 1e-6 * r.fps);
  EXPECT_EQ(r.result.keyframes, (std::vector<FrameIndex>{20}));
}

TEST(Throughput, TooShort) {
  SyntheticSpec spec;
  spec.frames = 1;
  SyntheticVideoSource src(spec);
  EXPECT_THROW((void)measure_throughput(src, DetectorConfig{}, 1), ValidationError);
}

}  // namespace
}  // namespace prism
