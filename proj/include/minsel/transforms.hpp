#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minsel/frames.hpp"

namespace minsel {

// Strictly increasing frame positions start, start+stride, ... capped at
// the last valid index.
struct SampleIndexSet {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
};

SampleIndexSet temporal_sample_indices(int t_count, int stride, int start);

struct SampledClip {
  FrameSequence frames;
  std::optional<MaskSequence> masks;
};

// Keeps only the frames at the sampled positions; masks, when present,
// are subsampled with the same index set.
SampledClip temporal_sample(const FrameSequence& sequence,
                            const std::optional<MaskSequence>& masks, int stride,
                            int start = 0);

// Area (box) average over k x k blocks, exact integer accumulation with
// round-half-up. Trailing rows/columns that do not fill a block are
// dropped with a warning. factor must be 2 or 4.
FrameSequence downsample(const FrameSequence& sequence, int factor,
                         WarningList* warnings = nullptr);

// Block-majority downsampling for masks; ties resolve to region (1) so a
// shrunken mask never under-covers on balance.
MaskSequence downsample_masks(const MaskSequence& masks, int factor);

// Sets every channel to `fill` where the mask is 1; mask-0 pixels pass
// through untouched.
FrameSequence mask_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           std::uint8_t fill);

// Full-frame separable Gaussian blur (kernel 2*radius+1, reflect padding)
// composited so only mask-1 pixels take the blurred value.
FrameSequence blur_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           double sigma, int radius);

// Temporal-median background model (lower median for even T); a pixel is
// foreground when any channel deviates from the model by more than
// `threshold`, background pixels are replaced with `fill`.
FrameSequence background_removal(const FrameSequence& sequence, int threshold,
                                 std::uint8_t fill);

// Normalized 1D Gaussian taps for offsets -radius..radius; weights sum
// to 1 within 1e-12.
std::vector<double> gaussian_kernel(double sigma, int radius);

// Plain single-threaded implementations of the pixel kernels above, kept
// as the correctness baseline for the parallel versions. Outputs are
// bitwise identical to the OpenMP path.
namespace reference {

FrameSequence downsample(const FrameSequence& sequence, int factor,
                         WarningList* warnings = nullptr);
FrameSequence mask_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           std::uint8_t fill);
FrameSequence blur_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           double sigma, int radius);
FrameSequence background_removal(const FrameSequence& sequence, int threshold,
                                 std::uint8_t fill);

}  // namespace reference

}  // namespace minsel
