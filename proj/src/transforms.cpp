#include "minsel/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "minsel/threading.hpp"
#include "transform_util.hpp"

namespace minsel {

using detail::blank_frames;
using detail::reflect;
using detail::round_u8;

std::vector<double> gaussian_kernel(double sigma, int radius) {
  detail::check_blur_args(sigma, radius);
  std::vector<double> weights(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int d = -radius; d <= radius; ++d) {
    const double w = std::exp(-(static_cast<double>(d) * d) / (2.0 * sigma * sigma));
    weights[static_cast<std::size_t>(d + radius)] = w;
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return weights;
}

SampleIndexSet temporal_sample_indices(int t_count, int stride, int start) {
  if (t_count < 1) throw Error("sequence length must be at least 1");
  if (stride < 1) throw Error("stride must be at least 1");
  if (start < 0 || start >= t_count)
    throw Error("start index " + std::to_string(start) + " out of range [0, " +
                std::to_string(t_count - 1) + "]");
  SampleIndexSet set;
  for (int i = start; i <= t_count - 1; i += stride) set.indices.push_back(i);
  return set;
}

SampledClip temporal_sample(const FrameSequence& sequence,
                            const std::optional<MaskSequence>& masks, int stride, int start) {
  if (masks) detail::check_mask_match(sequence, *masks);
  const SampleIndexSet set = temporal_sample_indices(sequence.t_count(), stride, start);

  std::vector<Frame> frames;
  std::vector<std::int64_t> ids;
  frames.reserve(set.indices.size());
  ids.reserve(set.indices.size());
  for (int t : set.indices) {
    frames.push_back(sequence.frame(t));
    ids.push_back(sequence.frame_ids()[static_cast<std::size_t>(t)]);
  }

  std::optional<MaskSequence> sampled_masks;
  if (masks) {
    std::vector<Mask> picked;
    picked.reserve(set.indices.size());
    for (int t : set.indices) picked.push_back(masks->mask(t));
    sampled_masks = MaskSequence(std::move(picked));
  }
  return {FrameSequence(std::move(frames), std::move(ids)), std::move(sampled_masks)};
}

FrameSequence downsample(const FrameSequence& sequence, int factor, WarningList* warnings) {
  detail::check_downsample_args(sequence, factor);
  detail::warn_truncation(sequence, factor, warnings);
  const int t_count = sequence.t_count();
  const int out_h = sequence.height() / factor, out_w = sequence.width() / factor;
  const int channels = sequence.channels();
  const int area = factor * factor;
  std::vector<Frame> out = blank_frames(t_count, out_h, out_w, channels);
  const int threads = worker_threads();

#pragma omp parallel for collapse(2) num_threads(threads)
  for (int t = 0; t < t_count; ++t) {
    for (int oy = 0; oy < out_h; ++oy) {
      const Frame& src = sequence.frame(t);
      Frame& dst = out[static_cast<std::size_t>(t)];
      for (int ox = 0; ox < out_w; ++ox) {
        for (int c = 0; c < channels; ++c) {
          int sum = 0;
          for (int dy = 0; dy < factor; ++dy)
            for (int dx = 0; dx < factor; ++dx)
              sum += src.at(oy * factor + dy, ox * factor + dx, c);
          dst.at(oy, ox, c) = static_cast<std::uint8_t>((sum + area / 2) / area);
        }
      }
    }
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

MaskSequence downsample_masks(const MaskSequence& masks, int factor) {
  if (factor != 2 && factor != 4)
    throw Error("downsample factor must be 2 or 4, got " + std::to_string(factor));
  if (masks.height() < factor || masks.width() < factor)
    throw Error("mask smaller than downsample factor " + std::to_string(factor));
  const int out_h = masks.height() / factor, out_w = masks.width() / factor;

  std::vector<Mask> out;
  out.reserve(static_cast<std::size_t>(masks.t_count()));
  for (int t = 0; t < masks.t_count(); ++t) {
    const Mask& src = masks.mask(t);
    Mask shrunk(out_h, out_w);
    for (int oy = 0; oy < out_h; ++oy) {
      for (int ox = 0; ox < out_w; ++ox) {
        int ones = 0;
        for (int dy = 0; dy < factor; ++dy)
          for (int dx = 0; dx < factor; ++dx) ones += src.at(oy * factor + dy, ox * factor + dx);
        shrunk.at(oy, ox) = 2 * ones >= factor * factor ? 1 : 0;  // ties go to region
      }
    }
    out.push_back(std::move(shrunk));
  }
  return MaskSequence(std::move(out));
}

FrameSequence mask_regions(const FrameSequence& sequence, const MaskSequence& masks,
                           std::uint8_t fill) {
  detail::check_mask_match(sequence, masks);
  const int t_count = sequence.t_count();
  const int height = sequence.height(), width = sequence.width(), channels = sequence.channels();
  std::vector<Frame> out(sequence.frames());
  const int threads = worker_threads();

#pragma omp parallel for collapse(2) num_threads(threads)
  for (int t = 0; t < t_count; ++t) {
    for (int y = 0; y < height; ++y) {
      const Mask& mask = masks.mask(t);
      Frame& dst = out[static_cast<std::size_t>(t)];
      for (int x = 0; x < width; ++x)
        if (mask.at(y, x))
          for (int c = 0; c < channels; ++c) dst.at(y, x, c) = fill;
    }
  }
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
  const int threads = worker_threads();

  for (int t = 0; t < sequence.t_count(); ++t) {
    const Frame& src = sequence.frame(t);
    const Mask& mask = masks.mask(t);
    Frame& dst = out[static_cast<std::size_t>(t)];

    // Horizontal pass over the whole frame; rows are independent.
#pragma omp parallel for num_threads(threads)
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        for (int c = 0; c < channels; ++c) {
          double acc = 0.0;
          for (int d = -radius; d <= radius; ++d)
            acc += kernel[static_cast<std::size_t>(d + radius)] *
                   src.at(y, reflect(x + d, width), c);
          scratch[stride * y + static_cast<std::size_t>(x) * channels + c] = acc;
        }
      }
    }

    // Vertical pass plus composite; the blurred value is only needed at
    // mask-1 pixels, everything else passes the original through.
#pragma omp parallel for num_threads(threads)
    for (int y = 0; y < height; ++y) {
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
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

FrameSequence background_removal(const FrameSequence& sequence, int threshold,
                                 std::uint8_t fill) {
  detail::check_background_args(sequence, threshold);
  const int t_count = sequence.t_count();
  const int height = sequence.height(), width = sequence.width(), channels = sequence.channels();
  const int lower_median = (t_count - 1) / 2;
  const int threads = worker_threads();

  Frame model(height, width, channels);
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint8_t> samples(static_cast<std::size_t>(t_count));
#pragma omp for collapse(2)
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        for (int c = 0; c < channels; ++c) {
          for (int t = 0; t < t_count; ++t)
            samples[static_cast<std::size_t>(t)] = sequence.frame(t).at(y, x, c);
          std::nth_element(samples.begin(), samples.begin() + lower_median, samples.end());
          model.at(y, x, c) = samples[static_cast<std::size_t>(lower_median)];
        }
      }
    }
  }

  std::vector<Frame> out = blank_frames(t_count, height, width, channels);
#pragma omp parallel for collapse(2) num_threads(threads)
  for (int t = 0; t < t_count; ++t) {
    for (int y = 0; y < height; ++y) {
      const Frame& src = sequence.frame(t);
      Frame& dst = out[static_cast<std::size_t>(t)];
      for (int x = 0; x < width; ++x) {
        int deviation = 0;
        for (int c = 0; c < channels; ++c)
          deviation = std::max(deviation, std::abs(static_cast<int>(src.at(y, x, c)) -
                                                   static_cast<int>(model.at(y, x, c))));
        const bool foreground = deviation > threshold;
        for (int c = 0; c < channels; ++c) dst.at(y, x, c) = foreground ? src.at(y, x, c) : fill;
      }
    }
  }
  return FrameSequence(std::move(out), sequence.frame_ids());
}

}  // namespace minsel
