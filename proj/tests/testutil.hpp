#pragma once

#include <sys/wait.h>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "minsel/frames.hpp"
#include "minsel/metrics.hpp"

namespace testutil {

namespace fs = std::filesystem;

// Scratch directory removed on destruction.
struct TempDir {
  fs::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("minsel_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the real CLI binary with `args`, capturing stdout, stderr and the
// exit code.
inline CliResult run_cli(const std::string& args) {
  static std::atomic<int> counter{0};
  const fs::path err_file =
      fs::temp_directory_path() /
      ("minsel_cli_err_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string command =
      std::string(MINSEL_CLI_BIN) + " " + args + " 2>" + err_file.string();

  CliResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = slurp(err_file);
  std::error_code ec;
  fs::remove(err_file, ec);
  return result;
}

// ---------------------------------------------------------------------
// Frame helpers.

inline minsel::Frame constant_frame(int h, int w, int c, std::uint8_t value) {
  minsel::Frame frame(h, w, c);
  std::fill(frame.data().begin(), frame.data().end(), value);
  return frame;
}

inline minsel::FrameSequence random_clip(int t, int h, int w, int c, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<minsel::Frame> frames;
  frames.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    minsel::Frame frame(h, w, c);
    for (auto& v : frame.data()) v = static_cast<std::uint8_t>(dist(rng));
    frames.push_back(std::move(frame));
  }
  return minsel::FrameSequence(std::move(frames));
}

inline minsel::MaskSequence random_masks(int t, int h, int w, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.4);
  std::vector<minsel::Mask> masks;
  masks.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    minsel::Mask mask(h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) mask.at(y, x) = coin(rng) ? 1 : 0;
    masks.push_back(std::move(mask));
  }
  return minsel::MaskSequence(std::move(masks));
}

inline minsel::MaskSequence uniform_masks(int t, int h, int w, std::uint8_t bit) {
  std::vector<minsel::Mask> masks;
  for (int i = 0; i < t; ++i) {
    minsel::Mask mask(h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) mask.at(y, x) = bit;
    masks.push_back(std::move(mask));
  }
  return minsel::MaskSequence(std::move(masks));
}

// ---------------------------------------------------------------------
// Independent selection oracles. Deliberately re-derived from the raw
// definitions rather than calling the library, so library regressions
// cannot hide in the expectations.

inline bool oracle_dominates(const minsel::MetricRecord& x, const minsel::MetricRecord& y) {
  if (x.auc < y.auc) return false;
  if (x.f1 > y.f1) return false;
  if (x.cmap > y.cmap) return false;
  return x.auc > y.auc || x.f1 < y.f1 || x.cmap < y.cmap;
}

inline std::set<std::string> oracle_pareto(const minsel::MetricTable& table) {
  std::set<std::string> front;
  for (const minsel::MetricRecord& candidate : table.records()) {
    bool dominated = false;
    for (const minsel::MetricRecord& other : table.records()) {
      if (&other == &candidate) continue;
      if (oracle_dominates(other, candidate)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.insert(candidate.setting_id);
  }
  return front;
}

// Normalized triplets over the full table (scope = all), id -> (a, f, c).
inline std::map<std::string, std::array<double, 3>> oracle_normalize(
    const minsel::MetricTable& table) {
  double min_a = table.record(0).auc, max_a = min_a;
  double min_f = table.record(0).f1, max_f = min_f;
  double min_c = table.record(0).cmap, max_c = min_c;
  for (const minsel::MetricRecord& r : table.records()) {
    min_a = std::min(min_a, r.auc);
    max_a = std::max(max_a, r.auc);
    min_f = std::min(min_f, r.f1);
    max_f = std::max(max_f, r.f1);
    min_c = std::min(min_c, r.cmap);
    max_c = std::max(max_c, r.cmap);
  }
  std::map<std::string, std::array<double, 3>> out;
  for (const minsel::MetricRecord& r : table.records()) {
    const double a = max_a == min_a ? 1.0 : (r.auc - min_a) / (max_a - min_a);
    const double f = max_f == min_f ? 1.0 : (max_f - r.f1) / (max_f - min_f);
    const double c = max_c == min_c ? 1.0 : (max_c - r.cmap) / (max_c - min_c);
    out[r.setting_id] = {a, f, c};
  }
  return out;
}

inline double oracle_distance(const std::array<double, 3>& n) {
  return std::sqrt((1.0 - n[0]) * (1.0 - n[0]) + (1.0 - n[1]) * (1.0 - n[1]) +
                   (1.0 - n[2]) * (1.0 - n[2]));
}

// Ascending fractional ranks with ties averaged, id -> rank.
inline std::map<std::string, double> oracle_ranks(const std::map<std::string, double>& values) {
  std::vector<std::pair<double, std::string>> order;
  for (const auto& [id, v] : values) order.emplace_back(v, id);
  std::sort(order.begin(), order.end());

  std::map<std::string, double> ranks;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && order[j + 1].first == order[i].first) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k].second] = rank;
    i = j + 1;
  }
  return ranks;
}

inline minsel::MetricTable load_table1() {
  return minsel::MetricTable::from_csv(MINSEL_TABLE1_CSV);
}

// Random valid metric table with continuous values (coincidental exact
// ties have probability zero).
inline minsel::MetricTable random_table(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> percent(0.0, 100.0);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  std::vector<minsel::MetricRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    records.push_back({"s" + std::to_string(i), percent(rng), fraction(rng), percent(rng)});
  return minsel::MetricTable(std::move(records));
}

}  // namespace testutil
