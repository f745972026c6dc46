#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "minsel/frames.hpp"

// Contract-level helpers shared by the parallel kernels and the serial
// reference implementations: argument checks, the rounding rule and the
// border convention. The pixel loops themselves are not shared.

namespace minsel::detail {

inline std::uint8_t round_u8(double v) {
  double r = std::floor(v + 0.5);  // round half up; v is never negative here
  if (r < 0.0) r = 0.0;
  if (r > 255.0) r = 255.0;
  return static_cast<std::uint8_t>(r);
}

// Symmetric reflection with edge repetition: -1 -> 0, -2 -> 1, n -> n-1.
inline int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

inline void check_downsample_args(const FrameSequence& sequence, int factor) {
  if (factor != 2 && factor != 4)
    throw Error("downsample factor must be 2 or 4, got " + std::to_string(factor));
  if (sequence.height() < factor || sequence.width() < factor)
    throw Error("frame smaller than downsample factor " + std::to_string(factor));
}

inline void warn_truncation(const FrameSequence& sequence, int factor, WarningList* warnings) {
  if (sequence.height() % factor != 0 || sequence.width() % factor != 0)
    warn(warnings, "downsample x" + std::to_string(factor) +
                       " drops trailing rows/columns of " + std::to_string(sequence.width()) +
                       "x" + std::to_string(sequence.height()) + " frames");
}

inline void check_mask_match(const FrameSequence& sequence, const MaskSequence& masks) {
  if (masks.t_count() != sequence.t_count() || masks.height() != sequence.height() ||
      masks.width() != sequence.width())
    throw Error("dimension mismatch between frames and masks");
}

inline void check_blur_args(double sigma, int radius) {
  if (!(sigma > 0.0)) throw Error("blur sigma must be positive");
  if (radius < 1) throw Error("blur radius must be at least 1");
}

inline void check_background_args(const FrameSequence& sequence, int threshold) {
  if (sequence.t_count() < 2) throw Error("background removal requires at least 2 frames");
  if (threshold < 1 || threshold > 255)
    throw Error("background threshold must be in [1, 255]");
}

inline std::vector<Frame> blank_frames(int t, int height, int width, int channels) {
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) frames.emplace_back(height, width, channels);
  return frames;
}

}  // namespace minsel::detail
