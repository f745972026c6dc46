#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "minsel/common.hpp"

namespace minsel {

// One 8-bit image with interleaved channels, row major:
// data[(y * width + x) * channels + c].
class Frame {
 public:
  Frame(int height, int width, int channels);
  Frame(int height, int width, int channels, std::vector<std::uint8_t> data);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }

  std::uint8_t at(int y, int x, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int y, int x, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool operator==(const Frame&) const = default;

 private:
  int height_;
  int width_;
  int channels_;
  std::vector<std::uint8_t> data_;
};

// Ordered clip of frames sharing height, width and channel count.
// frame_ids holds the numeric index each frame carried on disk (or
// 0..T-1 for sequences built in memory); mask lookup matches against it.
class FrameSequence {
 public:
  explicit FrameSequence(std::vector<Frame> frames);
  FrameSequence(std::vector<Frame> frames, std::vector<std::int64_t> frame_ids);

  int t_count() const { return static_cast<int>(frames_.size()); }
  int height() const { return frames_.front().height(); }
  int width() const { return frames_.front().width(); }
  int channels() const { return frames_.front().channels(); }

  const Frame& frame(int t) const { return frames_[static_cast<std::size_t>(t)]; }
  const std::vector<Frame>& frames() const { return frames_; }
  const std::vector<std::int64_t>& frame_ids() const { return frame_ids_; }

  // Pixel-level equality; frame ids are a loading detail and not compared.
  bool same_pixels(const FrameSequence& other) const;

  bool operator==(const FrameSequence&) const = default;

 private:
  std::vector<Frame> frames_;
  std::vector<std::int64_t> frame_ids_;
};

// Single-channel binary bitmap; every value is 0 or 1.
class Mask {
 public:
  Mask(int height, int width);  // all zero
  Mask(int height, int width, std::vector<std::uint8_t> data);

  int height() const { return height_; }
  int width() const { return width_; }

  std::uint8_t at(int y, int x) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int y, int x) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const Mask&) const = default;

 private:
  int height_;
  int width_;
  std::vector<std::uint8_t> data_;
};

// Per-frame region masks aligned with a FrameSequence.
class MaskSequence {
 public:
  explicit MaskSequence(std::vector<Mask> masks);

  int t_count() const { return static_cast<int>(masks_.size()); }
  int height() const { return masks_.front().height(); }
  int width() const { return masks_.front().width(); }

  const Mask& mask(int t) const { return masks_[static_cast<std::size_t>(t)]; }
  const std::vector<Mask>& masks() const { return masks_; }

  bool operator==(const MaskSequence&) const = default;

 private:
  std::vector<Mask> masks_;
};

// 8-bit threshold used when reading mask images; > 127 maps to region,
// everything else to background. Idempotent on its own output.
std::uint8_t binarize8(std::uint8_t value);

// Loads every PNG/PGM file matching the glob `pattern`, ordered by the
// numeric index embedded in the file name. Lossy formats are rejected.
FrameSequence load_frames(const std::filesystem::path& directory,
                          const std::string& pattern);

// Loads single-channel mask images matched to `expected` by frame id.
// A frame without a mask file gets an all-zero mask plus one warning.
MaskSequence load_masks(const std::filesystem::path& directory,
                        const std::string& pattern,
                        const FrameSequence& expected,
                        WarningList* warnings = nullptr);

// Writes one PNG per frame named by zero-padded position, returns the
// file count. A load of the written directory restores identical pixels.
int save_frames(const FrameSequence& sequence,
                const std::filesystem::path& directory, int index_width = 6);

}  // namespace minsel
