#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "minsel/frames.hpp"
#include "minsel/transforms.hpp"
#include "testutil.hpp"

using testutil::CliResult;
using testutil::run_cli;
using testutil::TempDir;

namespace {

const std::string kTable1 = MINSEL_TABLE1_CSV;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("select subcommand on the reference table") {
  TempDir out;

  SUBCASE("utility-weighted profile") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                out.path.string() + " --weights 0.5,0.25,0.25");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "distance=ts5_blur\nweighted=ts5_blur\nconstrained=raw\n");
    CHECK(std::filesystem::exists(out.path / "selection_report.csv"));
    CHECK(std::filesystem::exists(out.path / "dominance_matrix.csv"));

    // Combined-rank winner is the first report row.
    const std::string report = testutil::slurp(out.path / "selection_report.csv");
    const std::size_t first_row = report.find('\n') + 1;
    CHECK(report.substr(first_row, 9) == "ts5_blur,");
  }

  SUBCASE("privacy thresholds select blur") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                out.path.string() + " --tau-f 0.25 --tau-c 65");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("constrained=blur\n") != std::string::npos);
  }

  SUBCASE("impossible thresholds are not an error") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                out.path.string() + " --tau-f 0 --tau-c 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("constrained=NONE\n") != std::string::npos);
  }

  SUBCASE("pareto scope runs") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                out.path.string() + " --scope pareto");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("distance=") != std::string::npos);
  }
}

TEST_CASE("select subcommand error contract") {
  TempDir dir;
  SUBCASE("malformed CSV is a runtime error (1)") {
    write_text(dir.path / "bad.csv", "setting;auc\n");
    const CliResult r = run_cli("select --metrics " + (dir.path / "bad.csv").string() +
                                " --output " + (dir.path / "out").string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("bad weights are a usage error (2)") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                (dir.path / "out").string() + " --weights 0.9,0.9,0.9");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("unknown scope is a usage error (2)") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --output " +
                                (dir.path / "out").string() + " --scope sideways");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("unknown flag is a usage error (2)") {
    const CliResult r = run_cli("select --metrics " + kTable1 + " --frobnicate");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("missing subcommand is a usage error (2)") {
    CHECK(run_cli("").exit_code == 2);
  }
  SUBCASE("help exits 0") {
    CHECK(run_cli("--help").exit_code == 0);
  }
}

TEST_CASE("report subcommand writes two CSVs and two SVGs") {
  TempDir out;
  const CliResult r =
      run_cli("report --metrics " + kTable1 + " --output " + (out.path / "fresh").string());
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(out.path / "fresh" / "selection_report.csv"));
  CHECK(std::filesystem::exists(out.path / "fresh" / "dominance_matrix.csv"));
  CHECK(std::filesystem::exists(out.path / "fresh" / "pareto_auc_cmap.svg"));
  CHECK(std::filesystem::exists(out.path / "fresh" / "pareto_auc_f1.svg"));
}

TEST_CASE("select and report artifacts are byte identical across runs") {
  TempDir a;
  TempDir b;
  const std::string args = " --metrics " + kTable1 + " --weights 0.5,0.25,0.25 --output ";
  CHECK(run_cli("report" + args + a.path.string()).exit_code == 0);
  CHECK(run_cli("report" + args + b.path.string()).exit_code == 0);
  for (const std::string name : {"selection_report.csv", "dominance_matrix.csv",
                                 "pareto_auc_cmap.svg", "pareto_auc_f1.svg"})
    CHECK(testutil::slurp(a.path / name) == testutil::slurp(b.path / name));
}

TEST_CASE("minimize subcommand") {
  TempDir work;
  const auto input_dir = work.path / "frames";
  const auto masks_dir = work.path / "masks";

  // 50 frames with circular masks; inputs produced by our own encoder so
  // identity runs can be compared byte for byte.
  const minsel::FrameSequence frames = testutil::random_clip(50, 32, 32, 3, 901);
  minsel::save_frames(frames, input_dir);
  {
    std::vector<minsel::Frame> mask_images;
    for (int t = 0; t < 50; ++t) {
      minsel::Frame img(32, 32, 1);
      for (int y = 10; y < 22; ++y)
        for (int x = 10; x < 22; ++x) img.at(y, x, 0) = 255;
      mask_images.push_back(std::move(img));
    }
    minsel::save_frames(minsel::FrameSequence(std::move(mask_images)), masks_dir);
  }

  SUBCASE("stride-5 blur pipeline produces 10 frames") {
    write_text(work.path / "ts5_blur.json",
               R"({"steps":[{"op":"temporal_sample","stride":5,"start":0},)"
               R"({"op":"blur_regions","sigma":10,"radius":10}]})");
    const auto out_dir = work.path / "out";
    const CliResult r = run_cli("minimize --input " + input_dir.string() + " --pipeline " +
                                (work.path / "ts5_blur.json").string() + " --masks " +
                                masks_dir.string() + " --output " + out_dir.string());
    CHECK(r.exit_code == 0);
    const minsel::FrameSequence out = minsel::load_frames(out_dir, "*.png");
    CHECK(out.t_count() == 10);
    CHECK(std::filesystem::exists(out_dir / "provenance.json"));

    // Pixels outside the mask survive untouched; inside differs.
    const minsel::FrameSequence sampled =
        minsel::temporal_sample(frames, std::nullopt, 5).frames;
    CHECK(out.frame(0).at(0, 0, 0) == sampled.frame(0).at(0, 0, 0));

    SUBCASE("re-running from provenance reproduces the output byte for byte") {
      const auto out2_dir = work.path / "out2";
      const CliResult r2 = run_cli("minimize --input " + input_dir.string() + " --pipeline " +
                                   (out_dir / "provenance.json").string() + " --masks " +
                                   masks_dir.string() + " --output " + out2_dir.string());
      CHECK(r2.exit_code == 0);
      for (int i = 0; i < 10; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%06d.png", i);
        REQUIRE(testutil::slurp(out_dir / name) == testutil::slurp(out2_dir / name));
      }
    }
  }

  SUBCASE("empty pipeline copies the input byte for byte") {
    write_text(work.path / "empty.json", R"({"steps":[]})");
    const auto out_dir = work.path / "copy";
    const CliResult r = run_cli("minimize --input " + input_dir.string() + " --pipeline " +
                                (work.path / "empty.json").string() + " --output " +
                                out_dir.string());
    CHECK(r.exit_code == 0);
    for (int i = 0; i < 50; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%06d.png", i);
      REQUIRE(testutil::slurp(input_dir / name) == testutil::slurp(out_dir / name));
    }
  }

  SUBCASE("no pipeline flag behaves as the identity plus --stride") {
    const auto out_dir = work.path / "strided";
    const CliResult r = run_cli("minimize --input " + input_dir.string() + " --stride 10" +
                                " --output " + out_dir.string());
    CHECK(r.exit_code == 0);
    CHECK(minsel::load_frames(out_dir, "*.png").t_count() == 5);
  }

  SUBCASE("mask-requiring pipeline without --masks exits 1 naming the step") {
    write_text(work.path / "blur.json", R"({"steps":[{"op":"blur_regions"}]})");
    const CliResult r = run_cli("minimize --input " + input_dir.string() + " --pipeline " +
                                (work.path / "blur.json").string() + " --output " +
                                (work.path / "nope").string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("blur_regions") != std::string::npos);
  }

  SUBCASE("clip segmentation drops the short tail with a warning") {
    const auto out_dir = work.path / "clips";
    const CliResult r = run_cli("minimize --input " + input_dir.string() +
                                " --clips --clip-length 15 --output " + out_dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(std::filesystem::exists(out_dir / "clip_000" / "000000.png"));
    CHECK(std::filesystem::exists(out_dir / "clip_002" / "000014.png"));
    CHECK_FALSE(std::filesystem::exists(out_dir / "clip_003"));
    CHECK(minsel::load_frames(out_dir / "clip_001", "*.png").t_count() == 15);
  }

  SUBCASE("--stride conflicting with a temporal_sample step is a usage error") {
    write_text(work.path / "ts.json", R"({"steps":[{"op":"temporal_sample","stride":5}]})");
    const CliResult r = run_cli("minimize --input " + input_dir.string() + " --pipeline " +
                                (work.path / "ts.json").string() + " --stride 2 --output " +
                                (work.path / "x").string());
    CHECK(r.exit_code == 2);
  }

  SUBCASE("missing input directory exits 1") {
    const CliResult r = run_cli("minimize --input " + (work.path / "missing").string() +
                                " --output " + (work.path / "y").string());
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("pipeline subcommand validates and resolves defaults") {
  TempDir dir;
  write_text(dir.path / "p.json", R"({"steps":[{"op":"blur_regions"}]})");
  const CliResult ok = run_cli("pipeline --pipeline " + (dir.path / "p.json").string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"sigma\": 10.0") != std::string::npos);
  CHECK(ok.out.find("\"radius\": 10") != std::string::npos);

  write_text(dir.path / "bad.json", R"({"steps":[{"op":"sharpen"}]})");
  const CliResult bad = run_cli("pipeline --pipeline " + (dir.path / "bad.json").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("unknown pipeline op") != std::string::npos);
}
