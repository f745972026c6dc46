#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "minsel/transforms.hpp"
#include "transform_util.hpp"

// Single-threaded reference kernels. Deliberately written as plain nested
// loops, independent of the OpenMP implementations, with the same
// rounding and border conventions; tests assert bitwise agreement.

namespace minsel::reference {

using detail::blank_frames;
using detail::reflect;
using detail::round_u8;

FrameSequence downsample(const FrameSequence& sequence, int factor, WarningList* warnings) {
  detail::check_downsample_args(sequence, factor);
  detail::warn_truncation(sequence, factor, warnings);
  const int out_h = sequence.height() / factor, out_w = sequence.width() / factor;
  const int area = factor * factor;

  std::vector<Frame> out;
  out.reserve(static_cast<std::size_t>(sequence.t_count()));
  for (int t = 0; t < sequence.t_count(); ++t) {
    const Frame& src = sequence.frame(t);
    Frame dst(out_h, out_w, sequence.channels());
    for (int oy = 0; oy < out_h; ++oy)
      for (int ox = 0; ox < out_w; ++ox)
        for (int c = 0; c < sequence.channels(); ++c) {
          int sum = 0;
          for (int dy = 0; dy < factor; ++dy)
            for (int dx = 0; dx < factor; ++dx)
              sum += src.at(oy * factor + dy, ox * factor + dx, c);
          dst.at(oy, ox, c) = static_cast<std::uint8_t>((sum + area / 2) / area);
        }
    out.push_back(std::move(dst));
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

FrameSequence mask_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           std::uint8_t fill) {
  detail::check_mask_match(sequence, masks);
  std::vector<Frame> out(sequence.frames());
  for (int t = 0; t < sequence.t_count(); ++t)
    for (int y = 0; y < sequence.height(); ++y)
      for (int x = 0; x < sequence.width(); ++x)
        if (masks.mask(t).at(y, x))
          for (int c = 0; c < sequence.channels(); ++c)
            out[static_cast<std::size_t>(t)].at(y, x, c) = fill;
  return FrameSequence(std::move(out), sequence.frame_ids());
}

FrameSequence blur_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           double sigma, int radius) {
  detail::check_blur_args(sigma, radius);
  detail::check_mask_match(sequence, masks);
  const std::vector<double> kernel = gaussian_kernel(sigma, radius);
  const int height = sequence.height(), width = sequence.width(), channels = sequence.channels();
  const std::size_t stride = static_cast<std::size_t>(width) * channels;

  std::vector<Frame> out = blank_frames(sequence.t_count(), height, width, channels);
  std::vector<double> scratch(stride * height);

  for (int t = 0; t < sequence.t_count(); ++t) {
    const Frame& src = sequence.frame(t);
    const Mask& mask = masks.mask(t);
    Frame& dst = out[static_cast<std::size_t>(t)];

    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        for (int c = 0; c < channels; ++c) {
          double acc = 0.0;
          for (int d = -radius; d <= radius; ++d)
            acc += kernel[static_cast<std::size_t>(d + radius)] *
                   src.at(y, reflect(x + d, width), c);
          scratch[stride * y + static_cast<std::size_t>(x) * channels + c] = acc;
        }

    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        if (mask.at(y, x)) {
          for (int c = 0; c < channels; ++c) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d)
              acc += kernel[static_cast<std::size_t>(d + radius)] *
                     scratch[stride * reflect(y + d, height) +
                             static_cast<std::size_t>(x) * channels + c];
            dst.at(y, x, c) = round_u8(acc);
          }
        } else {
          for (int c = 0; c < channels; ++c) dst.at(y, x, c) = src.at(y, x, c);
        }
      }
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

FrameSequence background_removal(const FrameSequence& sequence, int threshold,
                                 std::uint8_t fill) {
  detail::check_background_args(sequence, threshold);
  const int t_count = sequence.t_count();
  const int lower_median = (t_count - 1) / 2;

  // Median via full sort rather than nth_element.
  Frame model(sequence.height(), sequence.width(), sequence.channels());
  std::vector<std::uint8_t> samples(static_cast<std::size_t>(t_count));
  for (int y = 0; y < sequence.height(); ++y)
    for (int x = 0; x < sequence.width(); ++x)
      for (int c = 0; c < sequence.channels(); ++c) {
        for (int t = 0; t < t_count; ++t)
          samples[static_cast<std::size_t>(t)] = sequence.frame(t).at(y, x, c);
        std::sort(samples.begin(), samples.end());
        model.at(y, x, c) = samples[static_cast<std::size_t>(lower_median)];
      }

  std::vector<Frame> out =
      blank_frames(t_count, sequence.height(), sequence.width(), sequence.channels());
  for (int t = 0; t < t_count; ++t) {
    const Frame& src = sequence.frame(t);
    Frame& dst = out[static_cast<std::size_t>(t)];
    for (int y = 0; y < sequence.height(); ++y)
      for (int x = 0; x < sequence.width(); ++x) {
        int deviation = 0;
        for (int c = 0; c < sequence.channels(); ++c)
          deviation = std::max(deviation, std::abs(static_cast<int>(src.at(y, x, c)) -
                                                   static_cast<int>(model.at(y, x, c))));
        const bool foreground = deviation > threshold;
        for (int c = 0; c < sequence.channels(); ++c)
          dst.at(y, x, c) = foreground ? src.at(y, x, c) : fill;
      }
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

}  // namespace minsel::reference
