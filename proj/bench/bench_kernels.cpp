/**
 * Copyright 2026 The qnr-herald Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include "qnr/oracle.hpp"
#include "qnr/optimizer.hpp"
#include "qnr/verify.hpp"

namespace {

const qnr::SourceParams kSource(1.0);
const qnr::DetectorParams kDetector(0.8, 0.0005);

void BM_CurveSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::evaluate_curve_serial(kSource, kDetector, 1, state.range(0)));
  }
}
void BM_CurveParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::evaluate_curve(kSource, kDetector, 1, state.range(0)));
  }
}
BENCHMARK(BM_CurveSerial)->Arg(8000)->Arg(1 << 20);
BENCHMARK(BM_CurveParallel)->Arg(8000)->Arg(1 << 20);

void BM_FidelityOptSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::find_fidelity_opt_serial(kSource, kDetector, state.range(0)));
  }
}
void BM_FidelityOptParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::find_fidelity_opt(kSource, kDetector, state.range(0)));
  }
}
BENCHMARK(BM_FidelityOptSerial)->Arg(8000)->Arg(1 << 20);
BENCHMARK(BM_FidelityOptParallel)->Arg(8000)->Arg(1 << 20);

void BM_MonteCarloSerial(benchmark::State& state) {
  const qnr::McConfig mc(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::mc_click_probability_serial(qnr::QnrConfig(8, 1), kSource, kDetector, mc));
  }
}
void BM_MonteCarloParallel(benchmark::State& state) {
  const qnr::McConfig mc(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::mc_click_probability(qnr::QnrConfig(8, 1), kSource, kDetector, mc));
  }
}
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_VerifyGridSerial(benchmark::State& state) {
  qnr::VerifyGrid grid;
  grid.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::verify_oracle_grid_serial(grid));
  }
}
void BM_VerifyGridParallel(benchmark::State& state) {
  qnr::VerifyGrid grid;
  grid.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnr::verify_oracle_grid(grid));
  }
}
BENCHMARK(BM_VerifyGridSerial)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyGridParallel)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
