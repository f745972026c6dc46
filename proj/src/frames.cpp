#include "minsel/frames.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>

#include "image_io.hpp"

namespace minsel {

namespace fs = std::filesystem;

void warn(WarningList* sink, std::string message) {
  if (sink)
    sink->push_back(std::move(message));
  else
    std::cerr << "warning: " << message << "\n";
}

Frame::Frame(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels),
      data_(static_cast<std::size_t>(height) * width * channels, 0) {
  if (height < 1 || width < 1 || (channels != 1 && channels != 3))
    throw Error("invalid frame shape");
}

Frame::Frame(int height, int width, int channels, std::vector<std::uint8_t> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  if (height < 1 || width < 1 || (channels != 1 && channels != 3))
    throw Error("invalid frame shape");
  if (data_.size() != static_cast<std::size_t>(height) * width * channels)
    throw Error("frame buffer size does not match its shape");
}

FrameSequence::FrameSequence(std::vector<Frame> frames)
    : FrameSequence(std::move(frames), {}) {}

FrameSequence::FrameSequence(std::vector<Frame> frames, std::vector<std::int64_t> frame_ids)
    : frames_(std::move(frames)), frame_ids_(std::move(frame_ids)) {
  if (frames_.empty()) throw Error("frame sequence requires at least one frame");
  if (frame_ids_.empty()) {
    frame_ids_.resize(frames_.size());
    std::iota(frame_ids_.begin(), frame_ids_.end(), std::int64_t{0});
  }
  if (frame_ids_.size() != frames_.size())
    throw Error("frame id list does not match frame count");
  const Frame& first = frames_.front();
  for (const Frame& f : frames_)
    if (f.height() != first.height() || f.width() != first.width() ||
        f.channels() != first.channels())
      throw Error("inconsistent dimensions across frames");
}

bool FrameSequence::same_pixels(const FrameSequence& other) const {
  return frames_ == other.frames_;
}

Mask::Mask(int height, int width)
    : height_(height), width_(width),
      data_(static_cast<std::size_t>(height) * width, 0) {
  if (height < 1 || width < 1) throw Error("invalid mask shape");
}

Mask::Mask(int height, int width, std::vector<std::uint8_t> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height < 1 || width < 1) throw Error("invalid mask shape");
  if (data_.size() != static_cast<std::size_t>(height) * width)
    throw Error("mask buffer size does not match its shape");
  for (std::uint8_t v : data_)
    if (v > 1) throw Error("mask values must be 0 or 1");
}

MaskSequence::MaskSequence(std::vector<Mask> masks) : masks_(std::move(masks)) {
  if (masks_.empty()) throw Error("mask sequence requires at least one mask");
  const Mask& first = masks_.front();
  for (const Mask& m : masks_)
    if (m.height() != first.height() || m.width() != first.width())
      throw Error("inconsistent dimensions across masks");
}

std::uint8_t binarize8(std::uint8_t value) { return value > 127 ? 255 : 0; }

namespace {

enum class ImageKind { Png, Pgm };

struct MatchedFile {
  fs::path path;
  std::int64_t index = -1;  // numeric id parsed from the stem
  ImageKind kind = ImageKind::Png;
};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Frame id = value of the last run of decimal digits in the stem, so both
// "000042.png" and "frame_042.png" sort by 42.
std::optional<std::int64_t> numeric_index(const std::string& stem) {
  int end = static_cast<int>(stem.size());
  while (end > 0 && !std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  if (end == 0) return std::nullopt;
  int begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  try {
    return std::stoll(stem.substr(begin, end - begin));
  } catch (const std::exception&) {
    return std::nullopt;  // digit run too long for int64
  }
}

std::vector<MatchedFile> match_images(const fs::path& directory, const std::string& pattern) {
  if (!fs::is_directory(directory))
    throw Error("missing directory: " + directory.string());

  static const std::vector<std::string> kLossy = {".jpg", ".jpeg", ".webp"};

  std::vector<MatchedFile> matches;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (fnmatch(pattern.c_str(), name.c_str(), 0) != 0) continue;

    const std::string ext = lowercase(entry.path().extension().string());
    ImageKind kind;
    if (ext == ".png") {
      kind = ImageKind::Png;
    } else if (ext == ".pgm") {
      kind = ImageKind::Pgm;
    } else if (std::find(kLossy.begin(), kLossy.end(), ext) != kLossy.end()) {
      throw Error("lossy image format rejected: " + name + " (only PNG and PGM are accepted)");
    } else {
      throw Error("unsupported image format: " + name + " (only PNG and PGM are accepted)");
    }

    const auto index = numeric_index(entry.path().stem().string());
    if (!index)
      throw Error("file name carries no numeric frame index: " + name);
    matches.push_back({entry.path(), *index, kind});
  }

  if (matches.empty())
    throw Error("zero matches for pattern '" + pattern + "' in " + directory.string());
  std::sort(matches.begin(), matches.end(), [](const MatchedFile& a, const MatchedFile& b) {
    return a.index != b.index ? a.index < b.index
                              : a.path.filename().string() < b.path.filename().string();
  });
  return matches;
}

io::DecodedImage decode(const MatchedFile& file) {
  return file.kind == ImageKind::Png ? io::read_png(file.path) : io::read_pgm(file.path);
}

}  // namespace

FrameSequence load_frames(const fs::path& directory, const std::string& pattern) {
  const std::vector<MatchedFile> files = match_images(directory, pattern);

  std::vector<Frame> frames;
  std::vector<std::int64_t> ids;
  frames.reserve(files.size());
  ids.reserve(files.size());
  for (const MatchedFile& file : files) {
    io::DecodedImage image = decode(file);
    if (!frames.empty() &&
        (image.height != frames.front().height() || image.width != frames.front().width() ||
         image.channels != frames.front().channels()))
      throw Error("inconsistent dimensions: " + file.path.filename().string());
    frames.emplace_back(image.height, image.width, image.channels, std::move(image.data));
    ids.push_back(file.index);
  }
  return FrameSequence(std::move(frames), std::move(ids));
}

MaskSequence load_masks(const fs::path& directory, const std::string& pattern,
                        const FrameSequence& expected, WarningList* warnings) {
  const std::vector<MatchedFile> files = match_images(directory, pattern);

  std::map<std::int64_t, const MatchedFile*> by_index;
  for (const MatchedFile& file : files) {
    auto [it, inserted] = by_index.emplace(file.index, &file);
    if (!inserted)
      throw Error("duplicate mask index " + std::to_string(file.index) + ": " +
                  file.path.filename().string() + " vs " +
                  it->second->path.filename().string());
  }

  std::vector<Mask> masks;
  masks.reserve(static_cast<std::size_t>(expected.t_count()));
  for (int t = 0; t < expected.t_count(); ++t) {
    const std::int64_t id = expected.frame_ids()[static_cast<std::size_t>(t)];
    const auto it = by_index.find(id);
    if (it == by_index.end()) {
      warn(warnings, "no mask file for frame " + std::to_string(id) + "; using empty mask");
      masks.emplace_back(expected.height(), expected.width());
      continue;
    }
    io::DecodedImage image = decode(*it->second);
    if (image.channels != 1)
      throw Error("mask is not single-channel: " + it->second->path.filename().string());
    if (image.height != expected.height() || image.width != expected.width())
      throw Error("dimension mismatch: mask " + it->second->path.filename().string() + " is " +
                  std::to_string(image.width) + "x" + std::to_string(image.height) +
                  ", frames are " + std::to_string(expected.width()) + "x" +
                  std::to_string(expected.height()));
    std::vector<std::uint8_t> bits(image.data.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
      bits[i] = binarize8(image.data[i]) ? 1 : 0;
    masks.emplace_back(image.height, image.width, std::move(bits));
    by_index.erase(it);
  }

  for (const auto& [id, file] : by_index)
    warn(warnings, "mask file " + file->path.filename().string() +
                       " matches no frame id; ignored");
  return MaskSequence(std::move(masks));
}

int save_frames(const FrameSequence& sequence, const fs::path& directory, int index_width) {
  if (index_width < 1 || index_width > 32) throw Error("index width must be in [1, 32]");
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error("cannot create directory: " + directory.string());

  for (int t = 0; t < sequence.t_count(); ++t) {
    char name[64];
    std::snprintf(name, sizeof(name), "%0*d.png", index_width, t);
    const Frame& frame = sequence.frame(t);
    io::write_png(directory / name, frame.height(), frame.width(), frame.channels(),
                  frame.data().data());
  }
  return sequence.t_count();
}

}  // namespace minsel
