#include "minsel/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "minsel/transforms.hpp"

namespace minsel {

using nlohmann::json;

namespace {

int require_int(const json& step, const std::string& key, int fallback) {
  if (!step.contains(key)) return fallback;
  const json& value = step.at(key);
  if (!value.is_number_integer())
    throw Error("pipeline step key '" + key + "' must be an integer");
  return value.get<int>();
}

double require_number(const json& step, const std::string& key, double fallback) {
  if (!step.contains(key)) return fallback;
  const json& value = step.at(key);
  if (!value.is_number()) throw Error("pipeline step key '" + key + "' must be a number");
  return value.get<double>();
}

void reject_unknown_keys(const json& step, const std::set<std::string>& known) {
  for (const auto& item : step.items())
    if (!known.contains(item.key()))
      throw Error("unknown key '" + item.key() + "' in pipeline step '" +
                  step.value("op", std::string("?")) + "'");
}

void check_fill(int fill) {
  if (fill < 0 || fill > 255) throw Error("fill value must be in [0, 255]");
}

TransformStep parse_step(const json& step) {
  if (!step.is_object() || !step.contains("op") || !step.at("op").is_string())
    throw Error("pipeline step must be an object with a string 'op'");
  const std::string op = step.at("op").get<std::string>();

  if (op == "temporal_sample") {
    reject_unknown_keys(step, {"op", "stride", "start"});
    if (!step.contains("stride")) throw Error("temporal_sample requires 'stride'");
    TemporalSampleStep s;
    s.stride = require_int(step, "stride", 1);
    s.start = require_int(step, "start", 0);
    return s;
  }
  if (op == "downsample") {
    reject_unknown_keys(step, {"op", "factor"});
    if (!step.contains("factor")) throw Error("downsample requires 'factor'");
    DownsampleStep s;
    s.factor = require_int(step, "factor", 2);
    return s;
  }
  if (op == "mask_regions") {
    reject_unknown_keys(step, {"op", "fill"});
    MaskRegionsStep s;
    s.fill = require_int(step, "fill", 0);
    return s;
  }
  if (op == "blur_regions") {
    reject_unknown_keys(step, {"op", "sigma", "radius"});
    BlurRegionsStep s;
    s.sigma = require_number(step, "sigma", 10.0);
    s.radius = require_int(step, "radius", 10);
    return s;
  }
  if (op == "background_removal") {
    reject_unknown_keys(step, {"op", "threshold", "fill"});
    BackgroundRemovalStep s;
    s.threshold = require_int(step, "threshold", 25);
    s.fill = require_int(step, "fill", 0);
    return s;
  }
  throw Error("unknown pipeline op '" + op + "'");
}

struct StepValidator {
  void operator()(const TemporalSampleStep& s) const {
    if (s.stride < 1) throw Error("temporal_sample stride must be at least 1");
    if (s.start < 0) throw Error("temporal_sample start must be non-negative");
  }
  void operator()(const DownsampleStep& s) const {
    if (s.factor != 2 && s.factor != 4) throw Error("downsample factor must be 2 or 4");
  }
  void operator()(const MaskRegionsStep& s) const { check_fill(s.fill); }
  void operator()(const BlurRegionsStep& s) const {
    if (!(s.sigma > 0.0)) throw Error("blur_regions sigma must be positive");
    if (s.radius < 1) throw Error("blur_regions radius must be at least 1");
  }
  void operator()(const BackgroundRemovalStep& s) const {
    if (s.threshold < 1 || s.threshold > 255)
      throw Error("background_removal threshold must be in [1, 255]");
    check_fill(s.fill);
  }
};

json step_to_json(const TransformStep& step) {
  json out;
  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TemporalSampleStep>) {
          out = {{"op", "temporal_sample"}, {"stride", s.stride}, {"start", s.start}};
        } else if constexpr (std::is_same_v<T, DownsampleStep>) {
          out = {{"op", "downsample"}, {"factor", s.factor}};
        } else if constexpr (std::is_same_v<T, MaskRegionsStep>) {
          out = {{"op", "mask_regions"}, {"fill", s.fill}};
        } else if constexpr (std::is_same_v<T, BlurRegionsStep>) {
          out = {{"op", "blur_regions"}, {"sigma", s.sigma}, {"radius", s.radius}};
        } else {
          out = {{"op", "background_removal"}, {"threshold", s.threshold}, {"fill", s.fill}};
        }
      },
      step);
  return out;
}

}  // namespace

std::string step_name(const TransformStep& step) {
  return step_to_json(step).at("op").get<std::string>();
}

bool PipelineSpec::requires_masks() const {
  for (const TransformStep& step : steps)
    if (std::holds_alternative<MaskRegionsStep>(step) ||
        std::holds_alternative<BlurRegionsStep>(step))
      return true;
  return false;
}

void PipelineSpec::validate() const {
  int temporal_steps = 0;
  for (const TransformStep& step : steps) {
    std::visit(StepValidator{}, step);
    if (std::holds_alternative<TemporalSampleStep>(step)) ++temporal_steps;
  }
  if (temporal_steps > 1)
    throw Error("a pipeline may contain at most one temporal_sample step; "
                "fold repeated strides into their product");
}

std::string PipelineSpec::to_json() const {
  json out;
  out["steps"] = json::array();
  for (const TransformStep& step : steps) out["steps"].push_back(step_to_json(step));
  return out.dump(2);
}

PipelineSpec PipelineSpec::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid pipeline JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc.at("steps").is_array())
    throw Error("pipeline JSON must be an object with a 'steps' array");
  for (const auto& item : doc.items())
    if (item.key() != "steps")
      throw Error("unknown key '" + item.key() + "' in pipeline JSON");

  PipelineSpec spec;
  for (const json& step : doc.at("steps")) spec.steps.push_back(parse_step(step));
  spec.validate();
  return spec;
}

PipelineSpec PipelineSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pipeline spec: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

namespace {

struct PipelineState {
  FrameSequence sequence;
  std::optional<MaskSequence> masks;
  WarningList* warnings;
};

struct StepRunner {
  PipelineState& state;

  void operator()(const TemporalSampleStep& s) const {
    SampledClip clip = temporal_sample(state.sequence, state.masks, s.stride, s.start);
    state.sequence = std::move(clip.frames);
    state.masks = std::move(clip.masks);
  }
  void operator()(const DownsampleStep& s) const {
    state.sequence = downsample(state.sequence, s.factor, state.warnings);
    if (state.masks) state.masks = downsample_masks(*state.masks, s.factor);
  }
  void operator()(const MaskRegionsStep& s) const {
    state.sequence =
        mask_regions(state.sequence, require_masks("mask_regions"), static_cast<std::uint8_t>(s.fill));
  }
  void operator()(const BlurRegionsStep& s) const {
    state.sequence = blur_regions(state.sequence, require_masks("blur_regions"), s.sigma, s.radius);
  }
  void operator()(const BackgroundRemovalStep& s) const {
    state.sequence =
        background_removal(state.sequence, s.threshold, static_cast<std::uint8_t>(s.fill));
  }

 private:
  const MaskSequence& require_masks(const std::string& op) const {
    if (!state.masks)
      throw Error("pipeline step '" + op + "' requires a mask sequence but none was provided");
    return *state.masks;
  }
};

}  // namespace

MinimizedRepresentation apply_pipeline(const FrameSequence& sequence,
                                       const std::optional<MaskSequence>& masks,
                                       const PipelineSpec& spec, WarningList* warnings) {
  spec.validate();
  PipelineState state{sequence, masks, warnings};
  for (const TransformStep& step : spec.steps) std::visit(StepRunner{state}, step);
  return {std::move(state.sequence), spec};
}

}  // namespace minsel
