#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "minsel/frames.hpp"
#include "minsel/transforms.hpp"

// Parallel kernels against their serial reference implementations on a
// synthetic 10-frame RGB clip. Run with MINSEL_THREADS to pin the worker
// count of the parallel variants.

namespace {

minsel::FrameSequence random_clip(int t, int side, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<minsel::Frame> frames;
  frames.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    minsel::Frame frame(side, side, 3);
    for (auto& v : frame.data()) v = static_cast<std::uint8_t>(dist(rng));
    frames.push_back(std::move(frame));
  }
  return minsel::FrameSequence(std::move(frames));
}

minsel::MaskSequence center_masks(int t, int side) {
  std::vector<minsel::Mask> masks;
  for (int i = 0; i < t; ++i) {
    minsel::Mask mask(side, side);
    for (int y = side / 4; y < 3 * side / 4; ++y)
      for (int x = side / 4; x < 3 * side / 4; ++x) mask.at(y, x) = 1;
    masks.push_back(std::move(mask));
  }
  return minsel::MaskSequence(std::move(masks));
}

void BM_blur_serial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 1);
  const auto masks = center_masks(10, side);
  for (auto _ : state)
    benchmark::DoNotOptimize(minsel::reference::blur_regions(clip, masks, 10.0, 10));
}

void BM_blur_omp(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 1);
  const auto masks = center_masks(10, side);
  for (auto _ : state) benchmark::DoNotOptimize(minsel::blur_regions(clip, masks, 10.0, 10));
}

void BM_downsample_serial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 2);
  for (auto _ : state) benchmark::DoNotOptimize(minsel::reference::downsample(clip, 4));
}

void BM_downsample_omp(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 2);
  for (auto _ : state) benchmark::DoNotOptimize(minsel::downsample(clip, 4));
}

void BM_background_removal_serial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(minsel::reference::background_removal(clip, 25, 0));
}

void BM_background_removal_omp(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto clip = random_clip(10, side, 3);
  for (auto _ : state) benchmark::DoNotOptimize(minsel::background_removal(clip, 25, 0));
}

}  // namespace

BENCHMARK(BM_blur_serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_blur_omp)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_downsample_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_downsample_omp)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_background_removal_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_background_removal_omp)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
