#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "minsel/frames.hpp"
#include "testutil.hpp"

using namespace minsel;
using testutil::TempDir;

namespace {

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

}  // namespace

TEST_CASE("save then load restores pixels exactly") {
  for (int channels : {1, 3}) {
    TempDir dir;
    const FrameSequence original = testutil::random_clip(10, 64, 64, channels, 7);
    CHECK(save_frames(original, dir.path) == 10);
    const FrameSequence loaded = load_frames(dir.path, "*.png");
    CHECK(loaded.t_count() == 10);
    CHECK(loaded.height() == 64);
    CHECK(loaded.width() == 64);
    CHECK(loaded.channels() == channels);
    CHECK(loaded.same_pixels(original));
  }
}

TEST_CASE("saved frames use zero-padded position names") {
  TempDir dir;
  save_frames(testutil::random_clip(10, 4, 4, 1, 1), dir.path);
  for (int i = 0; i < 10; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%06d.png", i);
    CHECK(std::filesystem::exists(dir.path / name));
  }

  TempDir narrow;
  save_frames(testutil::random_clip(2, 4, 4, 1, 2), narrow.path, 3);
  CHECK(std::filesystem::exists(narrow.path / "000.png"));
  CHECK(std::filesystem::exists(narrow.path / "001.png"));
}

TEST_CASE("frames are ordered by numeric index, not lexicographically") {
  TempDir dir;
  const Frame f0 = testutil::constant_frame(2, 2, 1, 10);
  const Frame f1 = testutil::constant_frame(2, 2, 1, 20);
  const Frame f2 = testutil::constant_frame(2, 2, 1, 30);
  save_frames(FrameSequence({f0}), dir.path / "stage");
  std::filesystem::rename(dir.path / "stage" / "000000.png", dir.path / "2.png");
  save_frames(FrameSequence({f1}), dir.path / "stage");
  std::filesystem::rename(dir.path / "stage" / "000000.png", dir.path / "10.png");
  save_frames(FrameSequence({f2}), dir.path / "stage");
  std::filesystem::rename(dir.path / "stage" / "000000.png", dir.path / "1.png");
  std::filesystem::remove_all(dir.path / "stage");

  const FrameSequence loaded = load_frames(dir.path, "*.png");
  REQUIRE(loaded.t_count() == 3);
  CHECK(loaded.frame(0).at(0, 0, 0) == 30);   // 1.png
  CHECK(loaded.frame(1).at(0, 0, 0) == 10);   // 2.png
  CHECK(loaded.frame(2).at(0, 0, 0) == 20);   // 10.png
  CHECK(loaded.frame_ids() == std::vector<std::int64_t>{1, 2, 10});
}

TEST_CASE("single 1x1 grayscale PGM loads as a minimal sequence") {
  TempDir dir;
  SUBCASE("binary P5") { write_bytes(dir.path / "000.pgm", std::string("P5\n1 1\n255\n") + '\0'); }
  SUBCASE("ascii P2 with comment") {
    write_bytes(dir.path / "000.pgm", "P2\n# tiny\n1 1\n255\n0\n");
  }
  const FrameSequence seq = load_frames(dir.path, "*.pgm");
  CHECK(seq.t_count() == 1);
  CHECK(seq.height() == 1);
  CHECK(seq.width() == 1);
  CHECK(seq.channels() == 1);
  CHECK(seq.frame(0).at(0, 0, 0) == 0);
}

TEST_CASE("load errors") {
  SUBCASE("missing directory") {
    CHECK_THROWS_WITH_AS(load_frames("/nonexistent/minsel", "*.png"),
                         doctest::Contains("missing directory"), Error);
  }
  SUBCASE("zero matches") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(load_frames(dir.path, "*.png"), doctest::Contains("zero matches"),
                         Error);
  }
  SUBCASE("mixed sizes") {
    TempDir dir;
    save_frames(FrameSequence({testutil::constant_frame(64, 64, 1, 0)}), dir.path / "a");
    save_frames(FrameSequence({testutil::constant_frame(32, 32, 1, 0)}), dir.path / "b");
    std::filesystem::rename(dir.path / "a" / "000000.png", dir.path / "000000.png");
    std::filesystem::rename(dir.path / "b" / "000000.png", dir.path / "000001.png");
    CHECK_THROWS_WITH_AS(load_frames(dir.path, "*.png"),
                         doctest::Contains("inconsistent dimensions"), Error);
  }
  SUBCASE("lossy format rejected") {
    TempDir dir;
    write_bytes(dir.path / "000000.jpg", "\xff\xd8\xff\xe0 junk");
    CHECK_THROWS_WITH_AS(load_frames(dir.path, "*"), doctest::Contains("lossy"), Error);
  }
  SUBCASE("corrupt PNG") {
    TempDir dir;
    write_bytes(dir.path / "000000.png", "definitely not a png");
    CHECK_THROWS_AS(load_frames(dir.path, "*.png"), Error);
  }
  SUBCASE("file name without numeric index") {
    TempDir dir;
    save_frames(FrameSequence({testutil::constant_frame(2, 2, 1, 0)}), dir.path / "a");
    std::filesystem::rename(dir.path / "a" / "000000.png", dir.path / "frame.png");
    CHECK_THROWS_WITH_AS(load_frames(dir.path, "*.png"),
                         doctest::Contains("no numeric frame index"), Error);
  }
}

TEST_CASE("save fails when the destination cannot be created") {
  TempDir dir;
  write_bytes(dir.path / "blocker", "file, not a directory");
  CHECK_THROWS_AS(
      save_frames(FrameSequence({testutil::constant_frame(2, 2, 1, 0)}), dir.path / "blocker" / "out"),
      Error);
}

TEST_CASE("mask loading matches frames by numeric id") {
  TempDir frames_dir;
  const FrameSequence frames = testutil::random_clip(10, 8, 8, 1, 3);
  save_frames(frames, frames_dir.path);
  const FrameSequence loaded = load_frames(frames_dir.path, "*.png");

  TempDir masks_dir;
  // Masks only for frames 0..7; anti-aliased gray values straddle 127.
  for (int i = 0; i < 8; ++i) {
    Frame mask_img(8, 8, 1);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) mask_img.at(y, x, 0) = static_cast<std::uint8_t>(x * 32);
    char name[32];
    std::snprintf(name, sizeof(name), "%06d", i);
    save_frames(FrameSequence({mask_img}), masks_dir.path / "stage");
    std::filesystem::rename(masks_dir.path / "stage" / "000000.png",
                            masks_dir.path / (std::string(name) + ".png"));
  }
  std::filesystem::remove_all(masks_dir.path / "stage");

  WarningList warnings;
  const MaskSequence masks = load_masks(masks_dir.path, "*.png", loaded, &warnings);
  CHECK(masks.t_count() == 10);
  CHECK(warnings.size() == 2);  // frames 8 and 9 have no mask file

  // Threshold at 127: columns with value 128 and up are region.
  for (int x = 0; x < 8; ++x) CHECK(masks.mask(0).at(0, x) == (x * 32 > 127 ? 1 : 0));

  // The two uncovered frames fall back to all-zero masks.
  for (int t = 8; t < 10; ++t)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) CHECK(masks.mask(t).at(y, x) == 0);
}

TEST_CASE("mask dimension mismatch is an error") {
  TempDir frames_dir;
  save_frames(testutil::random_clip(2, 64, 64, 1, 4), frames_dir.path);
  const FrameSequence frames = load_frames(frames_dir.path, "*.png");

  TempDir masks_dir;
  save_frames(testutil::random_clip(2, 32, 32, 1, 5), masks_dir.path);
  CHECK_THROWS_WITH_AS(load_masks(masks_dir.path, "*.png", frames, nullptr),
                       doctest::Contains("dimension mismatch"), Error);
}

TEST_CASE("color mask images are rejected") {
  TempDir frames_dir;
  save_frames(testutil::random_clip(1, 4, 4, 3, 6), frames_dir.path);
  const FrameSequence frames = load_frames(frames_dir.path, "*.png");

  TempDir masks_dir;
  save_frames(testutil::random_clip(1, 4, 4, 3, 7), masks_dir.path);
  CHECK_THROWS_WITH_AS(load_masks(masks_dir.path, "*.png", frames, nullptr),
                       doctest::Contains("single-channel"), Error);
}

TEST_CASE("binarization threshold is idempotent on its own output") {
  for (int v = 0; v <= 255; ++v) {
    const std::uint8_t once = binarize8(static_cast<std::uint8_t>(v));
    CHECK(binarize8(once) == once);
    CHECK((once == 255) == (v > 127));
  }
}

TEST_CASE("sequence invariants") {
  CHECK_THROWS_AS(FrameSequence({}), Error);
  CHECK_THROWS_AS(Frame(0, 4, 1), Error);
  CHECK_THROWS_AS(Frame(4, 4, 2), Error);
  CHECK_THROWS_AS(FrameSequence({testutil::constant_frame(2, 2, 1, 0),
                                 testutil::constant_frame(3, 2, 1, 0)}),
                  Error);
  CHECK_THROWS_AS(Mask(2, 2, {0, 1, 2, 1}), Error);
}
