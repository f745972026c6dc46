#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "minsel/frames.hpp"
#include "minsel/pipeline.hpp"
#include "minsel/report.hpp"
#include "minsel/select.hpp"
#include "minsel/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Bad command-line arguments; distinct from runtime/data errors so the
// exit codes stay scriptable (0 ok, 1 runtime, 2 usage).
struct UsageError {
  std::string message;
};

struct MinimizeOptions {
  std::string input;
  std::string output;
  std::string pipeline_path;
  std::string masks;
  std::string pattern = "*.png";
  std::string mask_pattern = "*.png";
  int stride = 0;
  int start = 0;
  bool clips = false;
  int clip_length = 10;
  int index_width = 6;
  bool stride_given = false;
  bool start_given = false;
  bool clips_given = false;
  bool clip_length_given = false;
  bool pattern_given = false;
  bool mask_pattern_given = false;
  bool index_width_given = false;
};

struct SelectOptions {
  std::string metrics;
  std::string output;
  std::string weights_text;
  double tau_f = std::numeric_limits<double>::infinity();
  double tau_c = std::numeric_limits<double>::infinity();
  std::string scope = "all";
};

minsel::SelectionWeights parse_weights(const std::string& text) {
  if (text.empty()) return {};
  double a = 0.0, f = 0.0, c = 0.0;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &a, &f, &c, &trailing) != 3)
    throw UsageError{"--weights expects three comma-separated numbers A,F,C"};
  minsel::SelectionWeights weights{a, f, c};
  try {
    weights.validate();
  } catch (const minsel::Error& e) {
    throw UsageError{std::string("--weights: ") + e.what()};
  }
  return weights;
}

minsel::NormScope parse_scope_arg(const std::string& scope) {
  try {
    return minsel::parse_scope(scope);
  } catch (const minsel::Error& e) {
    throw UsageError{std::string("--scope: ") + e.what()};
  }
}

minsel::PrivacyThresholds parse_thresholds(double tau_f, double tau_c) {
  minsel::PrivacyThresholds thresholds{tau_f, tau_c};
  try {
    thresholds.validate();
  } catch (const minsel::Error& e) {
    throw UsageError{std::string("--tau-f/--tau-c: ") + e.what()};
  }
  return thresholds;
}

void print_warnings(const minsel::WarningList& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string first_mask_step(const minsel::PipelineSpec& spec) {
  for (const minsel::TransformStep& step : spec.steps)
    if (std::holds_alternative<minsel::MaskRegionsStep>(step) ||
        std::holds_alternative<minsel::BlurRegionsStep>(step))
      return minsel::step_name(step);
  return "";
}

// A pipeline argument may be a plain spec ({"steps": ...}) or a
// provenance.json from an earlier run ({"pipeline": ...} plus the
// resolved run settings, which fill in any flag not given explicitly).
void load_pipeline_argument(MinimizeOptions& opt, minsel::PipelineSpec& spec) {
  std::ifstream in(opt.pipeline_path);
  if (!in) throw minsel::Error("cannot open pipeline spec: " + opt.pipeline_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw minsel::Error(std::string("invalid pipeline JSON: ") + e.what());
  }

  if (doc.is_object() && doc.contains("pipeline")) {
    spec = minsel::PipelineSpec::from_json(doc.at("pipeline").dump());
    if (!opt.clips_given && doc.contains("clips")) opt.clips = doc.at("clips").get<bool>();
    if (!opt.clip_length_given && doc.contains("clip_length"))
      opt.clip_length = doc.at("clip_length").get<int>();
    if (!opt.pattern_given && doc.contains("pattern"))
      opt.pattern = doc.at("pattern").get<std::string>();
    if (!opt.mask_pattern_given && doc.contains("mask_pattern"))
      opt.mask_pattern = doc.at("mask_pattern").get<std::string>();
    if (!opt.index_width_given && doc.contains("index_width"))
      opt.index_width = doc.at("index_width").get<int>();
  } else {
    spec = minsel::PipelineSpec::from_json(buffer.str());
  }
}

void write_provenance(const MinimizeOptions& opt, const minsel::PipelineSpec& spec,
                      const fs::path& path) {
  json doc;
  doc["pipeline"] = json::parse(spec.to_json());
  doc["clips"] = opt.clips;
  doc["clip_length"] = opt.clip_length;
  doc["pattern"] = opt.pattern;
  doc["mask_pattern"] = opt.mask_pattern;
  doc["index_width"] = opt.index_width;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw minsel::Error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

int run_minimize(MinimizeOptions opt, bool verbose) {
  minsel::PipelineSpec spec;
  if (!opt.pipeline_path.empty()) load_pipeline_argument(opt, spec);

  if (opt.stride_given || opt.start_given) {
    if (!opt.stride_given) throw UsageError{"--start requires --stride"};
    for (const minsel::TransformStep& step : spec.steps)
      if (std::holds_alternative<minsel::TemporalSampleStep>(step))
        throw UsageError{"--stride conflicts with a temporal_sample step in the pipeline spec"};
    spec.steps.insert(spec.steps.begin(),
                      minsel::TemporalSampleStep{opt.stride, opt.start});
  }
  spec.validate();
  if (opt.clip_length < 1) throw UsageError{"--clip-length must be at least 1"};

  minsel::WarningList warnings;
  const minsel::FrameSequence input = minsel::load_frames(opt.input, opt.pattern);

  std::optional<minsel::MaskSequence> masks;
  if (spec.requires_masks()) {
    if (opt.masks.empty())
      throw minsel::Error("pipeline step '" + first_mask_step(spec) +
                          "' requires masks but --masks was not given");
    masks = minsel::load_masks(opt.masks, opt.mask_pattern, input, &warnings);
  }

  const minsel::MinimizedRepresentation result =
      minsel::apply_pipeline(input, masks, spec, &warnings);

  const fs::path output_dir(opt.output);
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw minsel::Error("cannot create output directory: " + output_dir.string());

  int files_written = 0;
  if (opt.clips) {
    const int t_total = result.sequence.t_count();
    const int clip_count = t_total / opt.clip_length;
    if (t_total % opt.clip_length != 0)
      minsel::warn(&warnings, "dropping " + std::to_string(t_total % opt.clip_length) +
                                  " trailing frame(s) shorter than one clip");
    if (clip_count == 0)
      throw minsel::Error("minimized sequence has " + std::to_string(t_total) +
                          " frames, fewer than one clip of " + std::to_string(opt.clip_length));
    for (int clip = 0; clip < clip_count; ++clip) {
      std::vector<minsel::Frame> clip_frames(
          result.sequence.frames().begin() + static_cast<std::ptrdiff_t>(clip) * opt.clip_length,
          result.sequence.frames().begin() +
              static_cast<std::ptrdiff_t>(clip + 1) * opt.clip_length);
      char name[32];
      std::snprintf(name, sizeof(name), "clip_%03d", clip);
      files_written += minsel::save_frames(minsel::FrameSequence(std::move(clip_frames)),
                                           output_dir / name, opt.index_width);
    }
  } else {
    files_written = minsel::save_frames(result.sequence, output_dir, opt.index_width);
  }

  write_provenance(opt, result.provenance, output_dir / "provenance.json");
  print_warnings(warnings);
  if (verbose)
    std::cerr << "minimized " << input.t_count() << " -> " << result.sequence.t_count()
              << " frames, wrote " << files_written << " file(s) to " << output_dir.string()
              << "\n";
  return 0;
}

int run_select(const SelectOptions& opt, bool verbose) {
  const minsel::SelectionWeights weights = parse_weights(opt.weights_text);
  const minsel::PrivacyThresholds thresholds = parse_thresholds(opt.tau_f, opt.tau_c);
  const minsel::NormScope scope = parse_scope_arg(opt.scope);

  const minsel::MetricTable table = minsel::MetricTable::from_csv(opt.metrics);
  const minsel::SelectionReport report =
      minsel::build_selection_report(table, weights, thresholds, scope);

  const fs::path output_dir(opt.output);
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw minsel::Error("cannot create output directory: " + output_dir.string());

  minsel::write_selection_report(report, output_dir / "selection_report.csv");
  minsel::write_dominance_matrix(table, output_dir / "dominance_matrix.csv");

  std::cout << "distance=" << report.by_distance << "\n";
  std::cout << "weighted=" << report.by_weight << "\n";
  std::cout << "constrained=" << (report.by_constraint ? *report.by_constraint : "NONE") << "\n";
  if (verbose)
    std::cerr << "wrote selection_report.csv and dominance_matrix.csv to "
              << output_dir.string() << "\n";
  return 0;
}

int run_report(const SelectOptions& opt, bool verbose) {
  const minsel::SelectionWeights weights = parse_weights(opt.weights_text);
  const minsel::PrivacyThresholds thresholds = parse_thresholds(opt.tau_f, opt.tau_c);
  const minsel::NormScope scope = parse_scope_arg(opt.scope);

  const minsel::MetricTable table = minsel::MetricTable::from_csv(opt.metrics);
  const minsel::SelectionReport report =
      minsel::build_selection_report(table, weights, thresholds, scope);

  const fs::path output_dir(opt.output);
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw minsel::Error("cannot create output directory: " + output_dir.string());

  minsel::write_selection_report(report, output_dir / "selection_report.csv");
  minsel::write_dominance_matrix(table, output_dir / "dominance_matrix.csv");
  minsel::render_pareto_projection(table, minsel::ProjectionPlane::AucCmap,
                                   output_dir / "pareto_auc_cmap.svg");
  minsel::render_pareto_projection(table, minsel::ProjectionPlane::AucF1,
                                   output_dir / "pareto_auc_f1.svg");
  if (verbose)
    std::cerr << "wrote 2 CSV and 2 SVG artifact(s) to " << output_dir.string() << "\n";
  return 0;
}

int run_pipeline(const std::string& pipeline_path, const std::string& output) {
  const minsel::PipelineSpec spec = minsel::PipelineSpec::from_file(pipeline_path);
  const std::string resolved = spec.to_json() + "\n";
  if (output.empty()) {
    std::cout << resolved;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw minsel::Error("cannot write " + output);
    out << resolved;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minsel: video data minimization and utility/privacy operating-point selection"};
  app.require_subcommand(1);
  bool verbose = false;

  MinimizeOptions min_opt;
  CLI::App* minimize = app.add_subcommand("minimize", "apply a minimization pipeline to frames");
  minimize->add_flag("--verbose", verbose, "diagnostic output on stderr");
  minimize->add_option("--input", min_opt.input, "directory of input frames")->required();
  minimize->add_option("--output", min_opt.output, "output directory")->required();
  minimize->add_option("--pipeline", min_opt.pipeline_path,
                       "pipeline spec JSON (or provenance.json of an earlier run)");
  minimize->add_option("--masks", min_opt.masks, "directory of region masks");
  auto* pattern_opt = minimize->add_option("--pattern", min_opt.pattern, "frame glob, default *.png");
  auto* mask_pattern_opt =
      minimize->add_option("--mask-pattern", min_opt.mask_pattern, "mask glob, default *.png");
  auto* stride_opt =
      minimize->add_option("--stride", min_opt.stride, "prepend temporal sampling at this stride");
  auto* start_opt = minimize->add_option("--start", min_opt.start, "sampling start index");
  auto* clips_opt = minimize->add_flag("--clips", min_opt.clips,
                                       "segment the output into fixed-length clip directories");
  auto* clip_length_opt =
      minimize->add_option("--clip-length", min_opt.clip_length, "frames per clip, default 10");
  auto* index_width_opt = minimize->add_option("--index-width", min_opt.index_width,
                                               "zero padding of output frame names, default 6");

  SelectOptions sel_opt;
  CLI::App* select = app.add_subcommand("select", "pick operating points from a metrics table");
  select->add_option("--metrics", sel_opt.metrics, "metrics CSV (setting,auc,cmap,f1)")->required();
  select->add_option("--output", sel_opt.output, "output directory")->required();
  select->add_option("--weights", sel_opt.weights_text, "aggregation weights A,F,C (default equal)");
  select->add_option("--tau-f", sel_opt.tau_f, "privacy threshold on f1 (default +inf)");
  select->add_option("--tau-c", sel_opt.tau_c, "privacy threshold on cmap (default +inf)");
  select->add_option("--scope", sel_opt.scope, "normalization scope: all | pareto");
  select->add_flag("--verbose", verbose, "diagnostic output on stderr");

  SelectOptions rep_opt;
  CLI::App* report = app.add_subcommand("report", "write selection CSVs and projection SVGs");
  report->add_option("--metrics", rep_opt.metrics, "metrics CSV (setting,auc,cmap,f1)")->required();
  report->add_option("--output", rep_opt.output, "output directory")->required();
  report->add_option("--weights", rep_opt.weights_text, "aggregation weights A,F,C (default equal)");
  report->add_option("--tau-f", rep_opt.tau_f, "privacy threshold on f1 (default +inf)");
  report->add_option("--tau-c", rep_opt.tau_c, "privacy threshold on cmap (default +inf)");
  report->add_option("--scope", rep_opt.scope, "normalization scope: all | pareto");
  report->add_flag("--verbose", verbose, "diagnostic output on stderr");

  std::string pipeline_path, pipeline_output;
  CLI::App* pipeline = app.add_subcommand("pipeline", "validate a pipeline spec and echo it resolved");
  pipeline->add_option("--pipeline", pipeline_path, "pipeline spec JSON")->required();
  pipeline->add_option("--output", pipeline_output, "write the resolved spec here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    min_opt.stride_given = stride_opt->count() > 0;
    min_opt.start_given = start_opt->count() > 0;
    min_opt.clips_given = clips_opt->count() > 0;
    min_opt.clip_length_given = clip_length_opt->count() > 0;
    min_opt.pattern_given = pattern_opt->count() > 0;
    min_opt.mask_pattern_given = mask_pattern_opt->count() > 0;
    min_opt.index_width_given = index_width_opt->count() > 0;

    if (minimize->parsed()) return run_minimize(min_opt, verbose);
    if (select->parsed()) return run_select(sel_opt, verbose);
    if (report->parsed()) return run_report(rep_opt, verbose);
    if (pipeline->parsed()) return run_pipeline(pipeline_path, pipeline_output);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return 2;
  } catch (const minsel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
