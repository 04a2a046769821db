// Copyright 2026 The freqdoor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "freqdoor/dct.hpp"
#include "freqdoor/defense.hpp"
#include "freqdoor/fidelity.hpp"
#include "freqdoor/trigger.hpp"

namespace {

using namespace freqdoor;

PixelImage random_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  PixelImage img(side, side, channels);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(dist(rng));
  return img;
}

void BM_Dct2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpatialBlock block(n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-255.0, 255.0);
  for (auto& v : block.values()) v = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(dct2(block));
}
BENCHMARK(BM_Dct2)->Arg(8)->Arg(16)->Arg(32);

void BM_Idct2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FrequencyBlock coeffs(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(idct2(coeffs));
}
BENCHMARK(BM_Idct2)->Arg(8)->Arg(16)->Arg(32);

void BM_Inject(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const PixelImage img = random_image(side, 3, 2);
  const TriggerSpec spec = default_spec(side, side, 3);
  for (auto _ : state) benchmark::DoNotOptimize(inject(img, spec));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Inject)->Arg(32)->Arg(224);

void BM_Superimpose(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const PixelImage img = random_image(side, 3, 3);
  const SpatialTrigger trigger = spatial_trigger(default_spec(side, side, 3), side, side, 3);
  for (auto _ : state) benchmark::DoNotOptimize(superimpose(img, trigger));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Superimpose)->Arg(32)->Arg(224);

void BM_Ssim32(benchmark::State& state) {
  const PixelImage a = random_image(32, 3, 4);
  const PixelImage b = random_image(32, 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
}
BENCHMARK(BM_Ssim32);

void BM_WienerFilter32(benchmark::State& state) {
  const PixelImage img = random_image(32, 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(wiener_filter(img, 3));
}
BENCHMARK(BM_WienerFilter32);

void BM_Copod(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  FrequencyFeatureMatrix f;
  f.rows = rows;
  f.cols = 3072;
  f.values.resize(rows * f.cols);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (auto& v : f.values) v = normal(rng);
  for (std::size_t r = 0; r < rows; ++r) f.row_ids.push_back(std::to_string(r));
  for (auto _ : state) benchmark::DoNotOptimize(copod_score(f));
}
BENCHMARK(BM_Copod)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
