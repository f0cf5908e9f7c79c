// benchmarks/bench_linalg.cpp

// Copyright 2026  spdml authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "spdml/eval.hpp"
#include "spdml/linalg.hpp"

namespace {

using namespace spdml;

SpdMatrix sample_spd(int n, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.order = n;
  cfg.k = 1;
  cfg.per_class = 1;
  return synth_spd_clusters(cfg, seed).items.front();
}

void bm_spd_log(benchmark::State& state) {
  const SpdMatrix p = sample_spd(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spd_log(p));
  }
}

void bm_sym_exp(benchmark::State& state) {
  const SymMatrix s = spd_log(sample_spd(static_cast<int>(state.range(0)), 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_exp(s));
  }
}

void bm_cholesky(benchmark::State& state) {
  const SpdMatrix p = sample_spd(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cholesky(p));
  }
}

void bm_vec_unvec(benchmark::State& state) {
  const SymMatrix s = spd_log(sample_spd(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(unvec(vec(s)));
  }
}

void bm_lie_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpdMatrix p1 = sample_spd(n, 5);
  const SpdMatrix p2 = sample_spd(n, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lie_product(p1, p2));
  }
}

}  // namespace

BENCHMARK(bm_spd_log)->Arg(3)->Arg(9)->Arg(16);
BENCHMARK(bm_sym_exp)->Arg(3)->Arg(9)->Arg(16);
BENCHMARK(bm_cholesky)->Arg(3)->Arg(9)->Arg(16);
BENCHMARK(bm_vec_unvec)->Arg(3)->Arg(9)->Arg(16);
BENCHMARK(bm_lie_product)->Arg(3)->Arg(9)->Arg(16);

BENCHMARK_MAIN();
