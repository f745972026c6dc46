#include "image_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <string>

#include "minsel/common.hpp"

namespace minsel::io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw Error(what + ": " + path.string());
}

}  // namespace

DecodedImage read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) fail(path, "cannot open image");

  png_byte header[8];
  if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
    fail(path, "not a PNG file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "libpng init failed");
  }

  DecodedImage image;
  std::vector<png_bytep> row_pointers;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "corrupt PNG");
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  // Fold every input variant down to 8-bit gray or RGB.
  png_byte color_type = png_get_color_type(png, info);
  png_byte bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  image.height = static_cast<int>(png_get_image_height(png, info));
  image.width = static_cast<int>(png_get_image_width(png, info));
  image.channels = static_cast<int>(png_get_channels(png, info));
  if (image.channels != 1 && image.channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported channel count after decode");
  }

  const std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
  image.data.resize(stride * image.height);
  row_pointers.resize(image.height);
  for (int y = 0; y < image.height; ++y)
    row_pointers[static_cast<std::size_t>(y)] = image.data.data() + stride * y;

  png_read_image(png, row_pointers.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

namespace {

// Reads the next header token of a PGM file, skipping whitespace and
// '#' comment lines.
bool next_pgm_token(std::FILE* f, std::string& token) {
  token.clear();
  int ch = std::fgetc(f);
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = std::fgetc(f);
    } else if (std::isspace(ch)) {
      ch = std::fgetc(f);
    } else {
      break;
    }
  }
  if (ch == EOF) return false;
  while (ch != EOF && !std::isspace(ch) && ch != '#') {
    token.push_back(static_cast<char>(ch));
    ch = std::fgetc(f);
  }
  if (ch == '#') std::ungetc(ch, f);
  return true;
}

long parse_pgm_int(const std::string& token, const std::filesystem::path& path) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(token, &pos);
  } catch (const std::exception&) {
    throw Error("corrupt PGM header: " + path.string());
  }
  if (pos != token.size() || value < 0) throw Error("corrupt PGM header: " + path.string());
  return value;
}

}  // namespace

DecodedImage read_pgm(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) fail(path, "cannot open image");

  std::string token;
  if (!next_pgm_token(file.get(), token) || (token != "P5" && token != "P2"))
    fail(path, "not a PGM file");
  const bool binary = token == "P5";

  long fields[3];
  for (long& field : fields) {
    if (!next_pgm_token(file.get(), token)) fail(path, "corrupt PGM header");
    field = parse_pgm_int(token, path);
  }
  const long width = fields[0], height = fields[1], maxval = fields[2];
  if (width < 1 || height < 1) fail(path, "corrupt PGM header");
  if (maxval < 1 || maxval > 255) fail(path, "unsupported PGM maxval (16-bit)");

  DecodedImage image;
  image.height = static_cast<int>(height);
  image.width = static_cast<int>(width);
  image.channels = 1;
  const std::size_t count = static_cast<std::size_t>(width) * height;
  image.data.resize(count);

  if (binary) {
    if (std::fread(image.data.data(), 1, count, file.get()) != count)
      fail(path, "truncated PGM payload");
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      if (!next_pgm_token(file.get(), token)) fail(path, "truncated PGM payload");
      const long value = parse_pgm_int(token, path);
      if (value > maxval) fail(path, "PGM sample exceeds maxval");
      image.data[i] = static_cast<std::uint8_t>(value);
    }
  }
  return image;
}

void write_png(const std::filesystem::path& path, int height, int width,
               int channels, const std::uint8_t* data) {
  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) fail(path, "cannot open file for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(path, "libpng init failed");
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(path, "PNG write failed");
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y)
    rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(data + stride * y);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  if (std::fflush(file.get()) != 0) fail(path, "PNG write failed");
}

}  // namespace minsel::io
