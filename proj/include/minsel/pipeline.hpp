#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minsel/frames.hpp"

namespace minsel {

struct TemporalSampleStep {
  int stride = 1;
  int start = 0;
};

struct DownsampleStep {
  int factor = 2;
};

struct MaskRegionsStep {
  int fill = 0;
};

struct BlurRegionsStep {
  double sigma = 10.0;
  int radius = 10;
};

struct BackgroundRemovalStep {
  int threshold = 25;
  int fill = 0;
};

using TransformStep = std::variant<TemporalSampleStep, DownsampleStep, MaskRegionsStep,
                                   BlurRegionsStep, BackgroundRemovalStep>;

// JSON op name of a step, e.g. "temporal_sample".
std::string step_name(const TransformStep& step);

// Ordered transform configuration. Serialized form:
//   {"steps":[{"op":"temporal_sample","stride":5,"start":0}, ...]}
// Unknown op names or unknown keys inside a step are hard errors.
struct PipelineSpec {
  std::vector<TransformStep> steps;

  bool empty() const { return steps.empty(); }
  // True when any step needs a mask sequence (mask_regions, blur_regions).
  bool requires_masks() const;
  // Range checks plus the at-most-one-temporal-sample rule.
  void validate() const;

  std::string to_json() const;  // all parameters explicit, defaults resolved
  static PipelineSpec from_json(const std::string& text);
  static PipelineSpec from_file(const std::filesystem::path& path);
};

struct MinimizedRepresentation {
  FrameSequence sequence;
  PipelineSpec provenance;
};

// Runs the steps strictly in order. Temporal sampling subsamples masks in
// lockstep and downsampling shrinks them by block majority, so region
// steps later in the pipeline stay aligned. Steps that need masks fail if
// none were supplied.
MinimizedRepresentation apply_pipeline(const FrameSequence& sequence,
                                       const std::optional<MaskSequence>& masks,
                                       const PipelineSpec& spec,
                                       WarningList* warnings = nullptr);

}  // namespace minsel
