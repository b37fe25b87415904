// Copyright 2026 The cubeflag Authors
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

// Parallel kernels against their serial reference implementations.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <sstream>

#include "cubeflag/burnside.hpp"
#include "cubeflag/enumerate.hpp"
#include "cubeflag/flags.hpp"
#include "cubeflag/midlayers.hpp"
#include "cubeflag/pipeline.hpp"

namespace {

using namespace cubeflag;

std::vector<FlagBlock> pair_blocks(int L) {
  std::vector<FlagBlock> blocks;
  for (bool e : {false, true}) {
    const TypeSigma t = pair_type(e);
    blocks.push_back({t, enumerate_flags(t, 2, 4, forbidden_cycles(2, L))});
  }
  return blocks;
}

void BM_EnumerateParallel(benchmark::State& state) {
  const auto pattern = forbidden_cycles(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_free(3, pattern));
}

void BM_EnumerateSerial(benchmark::State& state) {
  const auto pattern = forbidden_cycles(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_free_serial(3, pattern));
}

void BM_TablesParallel(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto blocks = pair_blocks(L);
  const HFamily fam = enumerate_free(3, forbidden_cycles(3, L));
  for (auto _ : state) benchmark::DoNotOptimize(density_tables(blocks, fam));
}

void BM_TablesSerial(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto blocks = pair_blocks(L);
  const HFamily fam = enumerate_free(3, forbidden_cycles(3, L));
  for (auto _ : state) benchmark::DoNotOptimize(density_tables_serial(blocks, fam));
}

ShapeSpec mid4_shapes() {
  std::istringstream in(default_shape_text(4));
  return read_shapes(in);
}

void BM_MidTablesParallel(benchmark::State& state) {
  const ShapeSpec spec = mid4_shapes();
  const auto fams = enumerate_q2free(4);
  for (auto _ : state) benchmark::DoNotOptimize(mid_density_table(spec.shapes, spec.types, 4, fams));
}

void BM_MidTablesSerial(benchmark::State& state) {
  const ShapeSpec spec = mid4_shapes();
  const auto fams = enumerate_q2free(4);
  for (auto _ : state) benchmark::DoNotOptimize(mid_density_table_serial(spec.shapes, spec.types, 4, fams));
}

// Orbit counting at a fixed thread count; 1 thread is the serial baseline.
void BM_OrbitCountThreads(benchmark::State& state) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto pattern = forbidden_cycles(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(count_free_classes(3, pattern));
  omp_set_num_threads(saved);
}

BENCHMARK(BM_EnumerateParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TablesParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TablesSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MidTablesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MidTablesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitCountThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
