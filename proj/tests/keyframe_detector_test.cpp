#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "prism/ciede2000.hpp"
#include "prism/delta_trace.hpp"
#include "prism/errors.hpp"
#include "prism/keyframe_detector.hpp"
#include "prism/synthetic.hpp"

namespace prism {
namespace {

constexpr Rgb8Pixel kBlack{0, 0, 0};
constexpr Rgb8Pixel kWhite{255, 255, 255};

BufferedFrameSource uniform_video(const std::vector<Rgb8Pixel>& colors, std::uint32_t size = 4) {
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    frames.push_back(Frame::uniform(static_cast<FrameIndex>(i), size, size, colors[i]));
  }
  return BufferedFrameSource(std::move(frames));
}

// Yields frames with a caller-chosen index sequence.
class IndexedSource final : public FrameSource {
 public:
  explicit IndexedSource(std::vector<FrameIndex> indices) : indices_(std::move(indices)) {}
  std::optional<Frame> next() override {
    if (cursor_ >= indices_.size()) return std::nullopt;
    return Frame::uniform(indices_[cursor_++], 2, 2, kBlack);
  }

 private:
  std::vector<FrameIndex> indices_;
  std::size_t cursor_ = 0;
};

TEST(BuildDeltaSeries, EmptyStreamIsAnError) {
  BufferedFrameSource empty({});
  try {
    (void)build_delta_series(empty, {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no frames");
  }
}

TEST(BuildDeltaSeries, FrameGapIsAnError) {
  IndexedSource src({0, 1, 3});
  try {
    (void)build_delta_series(src, {});
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("frame gap"), std::string::npos);
  }
}

TEST(BuildDeltaSeries, SingleFrameHasNoDeltas) {
  auto src = uniform_video({kBlack});
  const DeltaSeries s = build_delta_series(src, {});
  EXPECT_TRUE(s.deltas.empty());
  EXPECT_EQ(s.frame_count(), 1);
}

TEST(BuildDeltaSeries, IdenticalFramesAreBelowJnd) {
  auto src = uniform_video({kBlack, kBlack});
  const DeltaSeries s = build_delta_series(src, {});
  ASSERT_EQ(s.deltas.size(), 1U);
  EXPECT_EQ(s.deltas[0], 0.0);
  EXPECT_FALSE(s.jnd_mask[0]);
}

TEST(BuildDeltaSeries, BlackBlackWhite) {
  auto src = uniform_video({kBlack, kBlack, kWhite});
  const DeltaSeries s = build_delta_series(src, {});
  ASSERT_EQ(s.deltas.size(), 2U);
  EXPECT_EQ(s.deltas[0], 0.0);
  // Oracle: direct evaluation on the neutral triples (0,0,0) and (100,0,0).
  EXPECT_NEAR(s.deltas[1], ciede2000({0, 0, 0}, {100, 0, 0}), 1e-9);
  EXPECT_NEAR(s.deltas[1], 100.0, 1e-9);
  EXPECT_EQ(s.jnd_mask, (std::vector<bool>{false, true}));
}

TEST(BuildDeltaSeries, JndMaskUsesInclusiveGate) {
  const DeltaSeries s = DeltaSeries::from_deltas({0.999, 1.0, 1.001}, 1.0);
  EXPECT_EQ(s.jnd_mask, (std::vector<bool>{false, true, true}));
}

TEST(AdaptiveStats, HandComputedExample) {
  const DeltaSeries s = DeltaSeries::from_deltas({2, 2, 2, 10}, 1.0);
  for (auto pop : {StatsPopulation::kAllDeltas, StatsPopulation::kJndSurvivors}) {
    const AdaptiveStats st = adaptive_stats(s, pop);
    EXPECT_DOUBLE_EQ(st.mu, 4.0);
    EXPECT_DOUBLE_EQ(st.sigma, std::sqrt(12.0));
    EXPECT_NEAR(st.mu + st.sigma, 7.4641, 1e-4);
    EXPECT_FALSE(st.stable);
  }
}

TEST(AdaptiveStats, SingleSurvivor) {
  const AdaptiveStats st = adaptive_stats(DeltaSeries::from_deltas({5}, 1.0));
  EXPECT_EQ(st.mu, 5.0);
  EXPECT_EQ(st.sigma, 0.0);
}

TEST(AdaptiveStats, NoSurvivorsIsStable) {
  for (auto pop : {StatsPopulation::kAllDeltas, StatsPopulation::kJndSurvivors}) {
    const AdaptiveStats st = adaptive_stats(DeltaSeries::from_deltas({0.2, 0.5, 0.9}, 1.0), pop);
    EXPECT_EQ(st.mu, 0.0);
    EXPECT_EQ(st.sigma, 0.0);
    EXPECT_TRUE(st.stable);
  }
  EXPECT_TRUE(adaptive_stats(DeltaSeries::from_deltas({}, 1.0)).stable);
}

TEST(AdaptiveStats, PopulationsDifferWhenSomeDeltasFailJnd) {
  const DeltaSeries s = DeltaSeries::from_deltas({0.5, 0.5, 3.0, 5.0}, 1.0);
  const AdaptiveStats survivors = adaptive_stats(s, StatsPopulation::kJndSurvivors);
  EXPECT_DOUBLE_EQ(survivors.mu, 4.0);
  EXPECT_DOUBLE_EQ(survivors.sigma, 1.0);
  const AdaptiveStats all = adaptive_stats(s, StatsPopulation::kAllDeltas);
  EXPECT_DOUBLE_EQ(all.mu, 2.25);
  // population variance of {0.5, 0.5, 3, 5}: (3.0625*2 + 0.5625 + 7.5625) / 4
  EXPECT_DOUBLE_EQ(all.sigma, std::sqrt(14.25 / 4.0));
}

TEST(SelectKeyframes, PicksOnlyTheOutlier) {
  const KeyframeResult r = select_keyframes(DeltaSeries::from_deltas({2, 2, 2, 10}, 1.0), {});
  EXPECT_EQ(r.keyframes, (std::vector<FrameIndex>{4}));
  EXPECT_EQ(r.threshold, r.mu + 1.0 * r.sigma);
  EXPECT_EQ(r.total_frames, 5);
}

TEST(SelectKeyframes, ConstantDeltasSelectNothing) {
  // Alternating colors with a constant dE00 of 30: sigma is 0 and the strict
  // comparison rejects every delta.
  const KeyframeResult r = select_keyframes(DeltaSeries::from_deltas({30, 30, 30, 30, 30}, 1.0), {});
  EXPECT_EQ(r.sigma, 0.0);
  EXPECT_EQ(r.threshold, 30.0);
  EXPECT_TRUE(r.keyframes.empty());
}

TEST(SelectKeyframes, AlternatingUniformFramesEndToEnd) {
  const Rgb8Pixel a{200, 40, 40};
  const Rgb8Pixel b{40, 160, 60};
  auto src = uniform_video({a, b, a, b, a, b});
  const KeyframeResult r = detect_keyframes(src, {});
  EXPECT_EQ(r.sigma, 0.0);
  EXPECT_TRUE(r.keyframes.empty());
}

TEST(SelectKeyframes, IdenticalFramesAreStable) {
  auto src = uniform_video({kWhite, kWhite, kWhite, kWhite});
  const KeyframeResult r = detect_keyframes(src, {});
  EXPECT_TRUE(r.stable);
  EXPECT_TRUE(r.keyframes.empty());

  DetectorConfig cfg;
  cfg.include_first_frame = true;
  auto again = uniform_video({kWhite, kWhite, kWhite});
  EXPECT_EQ(detect_keyframes(again, cfg).keyframes, (std::vector<FrameIndex>{0}));
}

TEST(SelectKeyframes, BlackBlackWhiteSelectsNothing) {
  auto src = uniform_video({kBlack, kBlack, kWhite});
  const KeyframeResult r = detect_keyframes(src, {});
  EXPECT_NEAR(r.threshold, 100.0, 1e-9);
  EXPECT_TRUE(r.keyframes.empty());
}

TEST(SelectKeyframes, IncludeFirstPrepends) {
  DetectorConfig cfg;
  cfg.include_first_frame = true;
  const KeyframeResult r = select_keyframes(DeltaSeries::from_deltas({2, 2, 2, 10}, 1.0), cfg);
  EXPECT_EQ(r.keyframes, (std::vector<FrameIndex>{0, 4}));
}

TEST(DetectorConfig, Validation) {
  DetectorConfig cfg;
  cfg.sigma_multiplier = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.sigma_multiplier = 1.0;
  cfg.jnd_threshold = -0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

std::vector<double> random_deltas(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> small(0.0, 3.0);
  std::uniform_real_distribution<double> big(5.0, 60.0);
  std::bernoulli_distribution spike(0.1);
  std::vector<double> d(n);
  for (auto& v : d) v = spike(rng) ? big(rng) : small(rng);
  return d;
}

TEST(SelectKeyframesProperty, SelectionIsAntitoneInSigmaMultiplier) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const DeltaSeries s = DeltaSeries::from_deltas(random_deltas(rng, 1 + trial % 80), 1.0);
    for (auto pop : {StatsPopulation::kAllDeltas, StatsPopulation::kJndSurvivors}) {
      std::vector<FrameIndex> previous;
      bool first = true;
      for (double k : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        DetectorConfig cfg;
        cfg.sigma_multiplier = k;
        cfg.stats_population = pop;
        const auto kf = select_keyframes(s, cfg).keyframes;
        if (!first) {
          EXPECT_TRUE(std::includes(previous.begin(), previous.end(), kf.begin(), kf.end()));
        }
        previous = kf;
        first = false;
      }
    }
  }
}

TEST(SelectKeyframesProperty, JndDominanceAndResultInvariants) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> jnd(0.0, 4.0);
  for (int trial = 0; trial < 300; ++trial) {
    DetectorConfig cfg;
    cfg.jnd_threshold = jnd(rng);
    cfg.include_first_frame = trial % 2 == 0;
    const DeltaSeries s = DeltaSeries::from_deltas(random_deltas(rng, trial % 60), cfg.jnd_threshold);
    const KeyframeResult r = select_keyframes(s, cfg);
    EXPECT_EQ(r.threshold, r.mu + cfg.sigma_multiplier * r.sigma);
    EXPECT_TRUE(std::is_sorted(r.keyframes.begin(), r.keyframes.end()));
    EXPECT_EQ(std::adjacent_find(r.keyframes.begin(), r.keyframes.end()), r.keyframes.end());
    for (FrameIndex k : r.keyframes) {
      ASSERT_GE(k, 0);
      ASSERT_LT(k, r.total_frames);
      if (k == 0) continue;
      const double d = s.deltas[static_cast<std::size_t>(k - 1)];
      EXPECT_GE(d, cfg.jnd_threshold);
      EXPECT_GT(d, r.threshold);
    }
  }
}

TEST(Detector, RecoloringThatPreservesDeltasPreservesSelection) {
  // Swapping two colors everywhere keeps every pairwise dE00 (the metric is
  // symmetric), so both streams share one delta series.
  const Rgb8Pixel x{200, 40, 40};
  const Rgb8Pixel y{40, 160, 60};
  auto p = uniform_video({x, x, x, y, y, x, x, x, x, y, y, y});
  auto q = uniform_video({y, y, y, x, x, y, y, y, y, x, x, x});
  const DeltaSeries sp = build_delta_series(p, {});
  const DeltaSeries sq = build_delta_series(q, {});
  EXPECT_EQ(sp.deltas, sq.deltas);
  EXPECT_EQ(select_keyframes(sp, {}).keyframes, select_keyframes(sq, {}).keyframes);
}

TEST(Detector, DeterministicAcrossRunsAndThreads) {
  SyntheticSpec spec;
  spec.frames = 120;
  spec.width = 97;
  spec.height = 211;
  KeyframeResult reference;
  bool have_reference = false;
  for (unsigned threads : {1U, 2U, 5U}) {
    for (int rep = 0; rep < 2; ++rep) {
      SyntheticVideoSource src(spec);
      KeyframeDetector det({}, threads);
      const KeyframeResult r = det.detect(src);
      if (!have_reference) {
        reference = r;
        have_reference = true;
        continue;
      }
      EXPECT_EQ(r.keyframes, reference.keyframes);
      EXPECT_EQ(r.mu, reference.mu);
      EXPECT_EQ(r.sigma, reference.sigma);
      EXPECT_EQ(r.threshold, reference.threshold);
    }
  }
  EXPECT_EQ(reference.keyframes, synthetic_transitions(spec));
}

TEST(Detector, HoldsAtMostTwoFrames) {
  SyntheticSpec spec;
  spec.frames = 200;
  spec.width = 16;
  spec.height = 16;
  SyntheticVideoSource src(spec);
  ResidencyProbe probe;
  src.attach_probe(&probe);
  (void)detect_keyframes(src, {});
  EXPECT_GE(probe.peak(), 1);
  EXPECT_LE(probe.peak(), 2);
  EXPECT_EQ(probe.live(), 0);
}

TEST(DeltaTrace, EmptySeriesIsHeaderOnly) {
  const DeltaSeries s = DeltaSeries::from_deltas({}, 1.0);
  std::ostringstream out;
  write_delta_trace(out, make_delta_trace(s, select_keyframes(s, {})));
  const std::string text = out.str();
  EXPECT_NE(text.find("# mu=0\n"), std::string::npos);
  EXPECT_NE(text.find("# total_frames=1\n"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 42), "frame_index,delta_e00,passed_jnd,selected\n");
}

TEST(DeltaTrace, OneRowPerDeltaAndOneSelected) {
  const DeltaSeries s = DeltaSeries::from_deltas({2, 2, 2, 10}, 1.0);
  const DeltaTrace t = make_delta_trace(s, select_keyframes(s, {}));
  ASSERT_EQ(t.rows.size(), 4U);
  EXPECT_EQ(std::count_if(t.rows.begin(), t.rows.end(), [](const TraceRow& r) { return r.selected; }), 1);
  EXPECT_TRUE(t.rows[3].selected);
  EXPECT_EQ(t.rows[3].frame_index, 4);
}

TEST(DeltaTrace, RoundTripsAtFullPrecision) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DeltaSeries s = DeltaSeries::from_deltas(random_deltas(rng, trial), 1.0);
    const KeyframeResult r = select_keyframes(s, {});
    const DeltaTrace t = make_delta_trace(s, r);
    std::stringstream io;
    write_delta_trace(io, t);
    const DeltaTrace back = read_delta_trace(io);
    EXPECT_EQ(back.mu, t.mu);
    EXPECT_EQ(back.sigma, t.sigma);
    EXPECT_EQ(back.threshold, t.threshold);
    EXPECT_EQ(back.jnd_threshold, t.jnd_threshold);
    EXPECT_EQ(back.total_frames, t.total_frames);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      EXPECT_EQ(back.rows[i].frame_index, t.rows[i].frame_index);
      EXPECT_EQ(back.rows[i].delta_e00, t.rows[i].delta_e00);
      EXPECT_EQ(back.rows[i].passed_jnd, t.rows[i].passed_jnd);
      EXPECT_EQ(back.rows[i].selected, t.rows[i].selected);
    }
  }
}

TEST(DeltaTrace, RejectsMalformedRows) {
  std::istringstream bad("frame_index,delta_e00,passed_jnd,selected\n1,abc,0,0\n");
  EXPECT_THROW((void)read_delta_trace(bad), SchemaError);
}

}  // namespace
}  // namespace prism
