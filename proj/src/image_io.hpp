#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

// PNG (libpng) and PGM codecs used by the frames module. Decoded images
// are 8-bit with 1 or 3 interleaved channels; palette, 16-bit and alpha
// inputs are folded down to that shape on read.

namespace minsel::io {

struct DecodedImage {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;  // row major, interleaved
};

DecodedImage read_png(const std::filesystem::path& path);
DecodedImage read_pgm(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, int height, int width,
               int channels, const std::uint8_t* data);

}  // namespace minsel::io
