// Copyright 2026 The scseg Authors.
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

// Serial reference vs. the OpenMP tile loop, plus the per-block kernels.

#include <benchmark/benchmark.h>

#include "scseg/scseg.hpp"
#include "synthetic.hpp"

namespace scseg {
namespace {

const ImagePlanes& Screen() {
  static const ImagePlanes planes = [] {
    testing::Rng rng(42);
    return ToPlanes(testing::MixedScreenImage(rng, 4, 8, true).image);
  }();
  return planes;
}

SegmentationConfig ConfigFor(int64_t method) {
  return SegmentationConfig::ForMethod(static_cast<Method>(method));
}

void BM_SegmentSerial(benchmark::State& state) {
  const SegmentationConfig cfg = ConfigFor(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SegmentImageSerial(Screen(), cfg));
  state.SetLabel(ToString(cfg.method));
}

void BM_SegmentParallel(benchmark::State& state) {
  const SegmentationConfig cfg = ConfigFor(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(SegmentImage(Screen(), cfg, threads));
  state.SetLabel(ToString(cfg.method));
}

constexpr int64_t kRansac = static_cast<int64_t>(Method::kRansac);
constexpr int64_t kSd = static_cast<int64_t>(Method::kSd);

BENCHMARK(BM_SegmentSerial)->Arg(kRansac)->Arg(kSd)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SegmentParallel)
    ->ArgsProduct({{kRansac, kSd}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_RansacBlock(benchmark::State& state) {
  testing::Rng rng(7);
  const auto lb = testing::RampPlusText(rng, 64);
  const BasisMatrix p = DctBasis(64, 10);
  for (auto _ : state) benchmark::DoNotOptimize(RansacSegment(lb.block, p));
}
BENCHMARK(BM_RansacBlock)->Unit(benchmark::kMillisecond);

void BM_AdmmBlock(benchmark::State& state) {
  testing::Rng rng(8);
  const auto lb = testing::HeavyTextBlock(rng);
  const BasisMatrix p = DctBasis(64, 10);
  const AdmmSolver solver(p, MakeDifferenceOperator(64), AdmmParams{});
  for (auto _ : state) benchmark::DoNotOptimize(solver.Solve(lb.block.values()));
}
BENCHMARK(BM_AdmmBlock)->Unit(benchmark::kMillisecond);

void BM_LadBlock(benchmark::State& state) {
  testing::Rng rng(9);
  const auto lb = testing::RampPlusText(rng, 64);
  const BasisMatrix p = DctBasis(64, 6);
  for (auto _ : state) benchmark::DoNotOptimize(LadFit(lb.block, p));
}
BENCHMARK(BM_LadBlock)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace scseg

BENCHMARK_MAIN();
