#include "prism/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "prism/annotations.hpp"
#include "prism/ciede2000.hpp"
#include "prism/delta_trace.hpp"
#include "prism/errors.hpp"
#include "prism/evaluation.hpp"
#include "prism/frame_source.hpp"
#include "prism/image_io.hpp"
#include "prism/keyframe_detector.hpp"
#include "prism/number_format.hpp"
#include "prism/synthetic.hpp"
#include "prism/throughput.hpp"

namespace prism::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InputOptions {
  std::string input_dir;
  std::string raw_pipe;
  int width = 0;
  int height = 0;
  std::vector<std::string> synthetic;  // {N, WxH}
  std::string source_id;
};

struct SyntheticArgs {
  std::int64_t frames = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
};

SyntheticArgs parse_synthetic(const std::vector<std::string>& args) {
  if (args.size() != 2) throw ConfigError("--synthetic takes N and WxH");
  SyntheticArgs s;
  try {
    std::size_t used = 0;
    s.frames = std::stoll(args[0], &used);
    if (used != args[0].size()) throw ConfigError("");
    const auto x = args[1].find('x');
    if (x == std::string::npos) throw ConfigError("");
    const long w = std::stol(args[1].substr(0, x), &used);
    if (used != x) throw ConfigError("");
    const std::string hs = args[1].substr(x + 1);
    const long h = std::stol(hs, &used);
    if (used != hs.size()) throw ConfigError("");
    if (w <= 0 || h <= 0) throw ConfigError("");
    s.width = static_cast<std::uint32_t>(w);
    s.height = static_cast<std::uint32_t>(h);
  } catch (const std::exception&) {
    throw ConfigError("--synthetic expects N WxH, e.g. --synthetic 1000 320x240");
  }
  if (s.frames < 0) throw ConfigError("--synthetic frame count must be non-negative");
  return s;
}

int source_count(const InputOptions& in) {
  return (in.input_dir.empty() ? 0 : 1) + (in.raw_pipe.empty() ? 0 : 1) + (in.synthetic.empty() ? 0 : 1);
}

void require_single_source(const InputOptions& in) {
  if (source_count(in) != 1) {
    throw ConfigError("specify exactly one input: --input-dir, --raw-pipe or --synthetic");
  }
}

std::unique_ptr<FrameSource> open_source(const InputOptions& in) {
  if (!in.input_dir.empty()) return std::make_unique<ImageSequenceSource>(in.input_dir);
  if (!in.raw_pipe.empty()) {
    if (in.raw_pipe == "-") return std::make_unique<RawRgbPipeSource>(std::cin, in.width, in.height);
    return std::make_unique<RawRgbPipeSource>(fs::path(in.raw_pipe), in.width, in.height);
  }
  const SyntheticArgs s = parse_synthetic(in.synthetic);
  SyntheticSpec spec;
  spec.frames = s.frames;
  spec.width = s.width;
  spec.height = s.height;
  return std::make_unique<SyntheticVideoSource>(spec);
}

std::string default_source_id(const InputOptions& in) {
  if (!in.source_id.empty()) return in.source_id;
  if (!in.input_dir.empty()) {
    const fs::path p = fs::path(in.input_dir).lexically_normal();
    const std::string name = (p.has_filename() ? p.filename() : p.parent_path().filename()).string();
    return name.empty() ? "input" : name;
  }
  if (!in.raw_pipe.empty()) return in.raw_pipe == "-" ? "stdin" : fs::path(in.raw_pipe).stem().string();
  return "synthetic-" + in.synthetic.at(0) + "-" + in.synthetic.at(1);
}

json input_json(const InputOptions& in) {
  if (!in.input_dir.empty()) return {{"kind", "image_sequence"}, {"path", in.input_dir}};
  if (!in.raw_pipe.empty()) {
    return {{"kind", "raw_rgb_pipe"}, {"path", in.raw_pipe}, {"width", in.width}, {"height", in.height}};
  }
  if (!in.synthetic.empty()) {
    return {{"kind", "synthetic"}, {"frames", in.synthetic.at(0)}, {"size", in.synthetic.at(1)}};
  }
  return nullptr;
}

json detector_json(const DetectorConfig& cfg) {
  return {{"jnd_threshold", cfg.jnd_threshold},
          {"sigma_multiplier", cfg.sigma_multiplier},
          {"include_first_frame", cfg.include_first_frame},
          {"stats_population", cfg.stats_population == StatsPopulation::kAllDeltas ? "all" : "jnd"}};
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void add_detector_flags(CLI::App& cmd, DetectorConfig& cfg, std::string& stats_over) {
  cmd.add_option("--jnd", cfg.jnd_threshold, "JND gate in dE00 units")->capture_default_str();
  cmd.add_option("--sigma-mult", cfg.sigma_multiplier, "Threshold is mu + k * sigma")->capture_default_str();
  cmd.add_flag("--include-first", cfg.include_first_frame, "Always emit frame 0 as a keyframe");
  cmd.add_option("--stats-over", stats_over, "Delta population for mu/sigma")
      ->check(CLI::IsMember({"all", "jnd"}))
      ->capture_default_str();
}

void add_input_flags(CLI::App& cmd, InputOptions& in, bool allow_synthetic) {
  cmd.add_option("--input-dir", in.input_dir, "Directory of PNG/PPM frames");
  cmd.add_option("--raw-pipe", in.raw_pipe, "Packed RGB24 file, or - for stdin");
  cmd.add_option("--width", in.width, "Frame width for --raw-pipe");
  cmd.add_option("--height", in.height, "Frame height for --raw-pipe");
  if (allow_synthetic) {
    cmd.add_option("--synthetic", in.synthetic, "Generated input: N WxH")->expected(2);
  }
}

StatsPopulation parse_stats(const std::string& s) {
  return s == "jnd" ? StatsPopulation::kJndSurvivors : StatsPopulation::kAllDeltas;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
  InputOptions input;
  DetectorConfig detector;
  std::string stats_over = "all";
  double fps = 0.0;
  std::string trace_out;
  std::string keyframes_out;
  std::string dump_frames;
  std::string dump_format = "ppm";
  std::string format = "json";
};

// Frames whose incoming delta passes the JND gate are spilled to a scratch
// directory while alive; the selected ones are moved into place afterwards.
class KeyframeDumper {
 public:
  KeyframeDumper(fs::path dir, std::string format, const DetectorConfig& cfg)
      : dir_(std::move(dir)), scratch_(dir_ / ".prism-candidates"), format_(std::move(format)), cfg_(cfg) {
    fs::create_directories(scratch_);
  }

  void observe(const Frame& frame, std::optional<double> incoming) {
    const bool candidate = incoming ? *incoming >= cfg_.jnd_threshold : cfg_.include_first_frame;
    if (!candidate) return;
    const fs::path path = scratch_ / name(frame.index());
    if (format_ == "png") {
      write_png(path, frame);
    } else {
      write_ppm(path, frame);
    }
  }

  void finish(const std::vector<FrameIndex>& keyframes) {
    for (FrameIndex k : keyframes) fs::rename(scratch_ / name(k), dir_ / name(k));
    fs::remove_all(scratch_);
  }

 private:
  std::string name(FrameIndex i) const { return "kf_" + std::to_string(i) + "." + format_; }

  fs::path dir_;
  fs::path scratch_;
  std::string format_;
  const DetectorConfig& cfg_;
};

int cmd_extract(ExtractOptions& o, std::ostream& out) {
  require_single_source(o.input);
  o.detector.stats_population = parse_stats(o.stats_over);
  o.detector.validate();

  auto source = open_source(o.input);
  KeyframeDetector detector(o.detector);
  std::unique_ptr<KeyframeDumper> dumper;
  FrameObserver observer;
  if (!o.dump_frames.empty()) {
    dumper = std::make_unique<KeyframeDumper>(o.dump_frames, o.dump_format, o.detector);
    observer = [&](const Frame& f, std::optional<double> d) { dumper->observe(f, d); };
  }
  const DeltaSeries series = detector.build_delta_series(*source, observer);
  const KeyframeResult result = select_keyframes(series, o.detector);
  if (dumper) dumper->finish(result.keyframes);

  json config = detector_json(o.detector);
  config["input"] = input_json(o.input);
  config["fps"] = o.fps;
  config["format"] = o.format;
  if (!o.trace_out.empty()) config["trace_out"] = o.trace_out;
  if (!o.dump_frames.empty()) config["dump_frames"] = o.dump_frames;

  const json doc = {{"source_id", default_source_id(o.input)},
                    {"total_frames", result.total_frames},
                    {"mu", result.mu},
                    {"sigma", result.sigma},
                    {"threshold", result.threshold},
                    {"stable", result.stable},
                    {"keyframes", result.keyframes},
                    {"config", config}};
  const std::string text = doc.dump(2) + "\n";
  if (!o.keyframes_out.empty()) write_text_file(o.keyframes_out, text);

  if (!o.trace_out.empty()) {
    std::ostringstream trace;
    write_delta_trace(trace, make_delta_trace(series, result));
    write_text_file(o.trace_out, trace.str());
  }

  if (o.format == "csv") {
    out << "keyframe\n";
    for (FrameIndex k : result.keyframes) out << k << '\n';
  } else {
    out << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalOptions {
  InputOptions input;
  std::string ground_truth;
  std::string predictions;
  std::string report_out;
  std::string fidelity_mode = "default";
  std::string format = "json";
};

fs::path summary_path(const fs::path& csv) {
  fs::path p = csv;
  return p.extension() == ".csv" ? p.replace_extension(".json") : fs::path(csv.string() + ".json");
}

int cmd_eval(EvalOptions& o, std::ostream& out, std::ostream& err) {
  if (source_count(o.input) > 1) throw ConfigError("specify at most one of --input-dir, --raw-pipe");

  std::vector<GroundTruth> truths;
  for (const json& doc : load_json_documents(o.ground_truth)) truths.push_back(parse_ground_truth(doc));
  std::vector<Predictions> preds;
  for (const json& doc : load_json_documents(o.predictions)) preds.push_back(parse_predictions(doc));

  const FidelityMode mode = o.fidelity_mode == "literal" ? FidelityMode::kLiteral : FidelityMode::kDistance;
  const bool single_video = truths.size() == 1;
  FrameProvider provider = [&](const VideoMeta& meta) -> std::unique_ptr<FrameSource> {
    if (!o.input.input_dir.empty()) {
      const fs::path per_video = fs::path(o.input.input_dir) / meta.source_id;
      if (fs::is_directory(per_video)) return std::make_unique<ImageSequenceSource>(per_video);
      if (single_video) return std::make_unique<ImageSequenceSource>(o.input.input_dir);
      return nullptr;
    }
    if (!o.input.raw_pipe.empty() && single_video) return open_source(o.input);
    return nullptr;
  };

  const CorpusReport report = evaluate_corpus(truths, preds, provider, mode);
  json summary = report_summary(report);
  summary["config"] = {{"ground_truth", o.ground_truth},
                       {"predictions", o.predictions},
                       {"fidelity_mode", o.fidelity_mode},
                       {"input", input_json(o.input)},
                       {"report_out", o.report_out},
                       {"format", o.format}};

  std::ostringstream csv;
  write_report_csv(csv, report);
  const std::string summary_text = summary.dump(2) + "\n";
  if (!o.report_out.empty()) {
    write_text_file(o.report_out, csv.str());
    write_text_file(summary_path(o.report_out), summary_text);
  }
  out << (o.format == "csv" ? csv.str() : summary_text);

  for (const std::string& id : report.skipped) err << "prism: skipped " << id << " (no matching ground truth/predictions)\n";
  if (report.rows.empty()) {
    err << "prism: no video had both ground truth and predictions\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  InputOptions input;
  DetectorConfig detector;
  std::string stats_over = "all";
  std::string format = "json";
};

int cmd_bench(BenchOptions& o, std::ostream& out) {
  require_single_source(o.input);
  if (!o.input.synthetic.empty() && parse_synthetic(o.input.synthetic).frames < 2) {
    throw ConfigError("need ≥ 2 frames");
  }
  o.detector.stats_population = parse_stats(o.stats_over);
  o.detector.validate();
  auto source = open_source(o.input);
  const ThroughputReport r = measure_throughput(*source, o.detector);

  json config = detector_json(o.detector);
  config["input"] = input_json(o.input);
  const json doc = {{"frames", r.frames},
                    {"width", r.width},
                    {"height", r.height},
                    {"elapsed_s", r.elapsed_s},
                    {"fps", r.fps},
                    {"keyframes", r.result.keyframes.size()},
                    {"config", config}};
  if (o.format == "csv") {
    out << "frames,width,height,elapsed_s,fps,keyframes\n"
        << r.frames << ',' << r.width << ',' << r.height << ',' << format_shortest(r.elapsed_s) << ','
        << format_shortest(r.fps) << ',' << r.result.keyframes.size() << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_deltae(const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() != 6) throw ConfigError("deltae takes six numbers: L1 a1 b1 L2 a2 b2");
  double v[6];
  for (std::size_t i = 0; i < 6; ++i) {
    if (!parse_double(args[i], v[i]) || !std::isfinite(v[i])) {
      throw ConfigError("deltae: not a finite number: '" + args[i] + "'");
    }
  }
  out << format_fixed(ciede2000({v[0], v[1], v[2]}, {v[3], v[4], v[5]}), 4) << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"prism: perceptual keyframe extraction and evaluation"};
  app.set_config("--config", "", "TOML/INI file with default flag values");
  app.require_subcommand(1);

  ExtractOptions ex;
  CLI::App* extract = app.add_subcommand("extract", "Detect keyframes in one video");
  add_input_flags(*extract, ex.input, true);
  add_detector_flags(*extract, ex.detector, ex.stats_over);
  extract->add_option("--fps", ex.fps, "Native frame rate, recorded in the output");
  extract->add_option("--source-id", ex.input.source_id, "Identifier written to the output");
  extract->add_option("--trace-out", ex.trace_out, "Write the per-delta trace CSV here");
  extract->add_option("--keyframes-out", ex.keyframes_out, "Write the keyframes JSON here");
  extract->add_option("--dump-frames", ex.dump_frames, "Write kf_<index> images into this directory");
  extract->add_option("--dump-format", ex.dump_format, "Image format for --dump-frames")
      ->check(CLI::IsMember({"ppm", "png"}))
      ->capture_default_str();
  extract->add_option("--format", ex.format, "stdout format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  EvalOptions ev;
  CLI::App* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  add_input_flags(*eval, ev.input, false);
  eval->add_option("--ground-truth", ev.ground_truth, "Ground-truth JSON file or directory")->required();
  eval->add_option("--predictions", ev.predictions, "Predictions JSON file or directory")->required();
  eval->add_option("--report-out", ev.report_out, "CSV report path; the JSON summary goes next to it");
  eval->add_option("--fidelity-mode", ev.fidelity_mode, "default | literal")
      ->check(CLI::IsMember({"default", "literal"}))
      ->capture_default_str();
  eval->add_option("--format", ev.format, "stdout format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  BenchOptions be;
  CLI::App* bench = app.add_subcommand("bench", "Measure detector throughput");
  add_input_flags(*bench, be.input, true);
  add_detector_flags(*bench, be.detector, be.stats_over);
  bench->add_option("--format", be.format, "stdout format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::vector<std::string> deltae_args;
  CLI::App* deltae = app.add_subcommand("deltae", "CIEDE2000 between two Lab triples");
  deltae->add_option("values", deltae_args, "L1 a1 b1 L2 a2 b2")->expected(6)->required();
  deltae->positionals_at_end();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*extract) return cmd_extract(ex, out);
    if (*eval) return cmd_eval(ev, out, err);
    if (*bench) return cmd_bench(be, out);
    if (*deltae) return cmd_deltae(deltae_args, out);
  } catch (const std::exception& e) {
    err << "prism: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace prism::cli
