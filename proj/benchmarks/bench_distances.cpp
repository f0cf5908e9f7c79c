// benchmarks/bench_distances.cpp

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

#include <Eigen/Dense>

#include "spdml/distances.hpp"
#include "spdml/eval.hpp"
#include "spdml/geodesic.hpp"
#include "spdml/random.hpp"

namespace {

using namespace spdml;

std::pair<SpdMatrix, SpdMatrix> sample_pair(int n) {
  SynthConfig cfg;
  cfg.order = n;
  cfg.k = 2;
  cfg.per_class = 1;
  auto items = synth_spd_clusters(cfg, 42).items;
  return {items[0], items[1]};
}

void bm_distance(benchmark::State& state, DistanceKind kind) {
  const auto [p1, p2] = sample_pair(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(kind, p1, p2));
  }
}

void bm_geodesic_learned(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [p1, p2] = sample_pair(n);
  const int d = sym_vec_dim(n);
  auto rng = make_rng(7);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      a(i, j) = gaussian(rng);
    }
  }
  const SpdMatrix m(a * a.transpose() +
                    static_cast<double>(d) * Eigen::MatrixXd::Identity(d, d));
  const LearnedMetric metric(n, MahalanobisMetric(m));
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesic_dist(metric, p1, p2));
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_distance, frobenius, DistanceKind::kFrobenius);
BENCHMARK_CAPTURE(bm_distance, cholesky_frobenius,
                  DistanceKind::kCholeskyFrobenius);
BENCHMARK_CAPTURE(bm_distance, j_divergence, DistanceKind::kJDivergence);
BENCHMARK_CAPTURE(bm_distance, jbld, DistanceKind::kJbld);
BENCHMARK_CAPTURE(bm_distance, affine_invariant,
                  DistanceKind::kAffineInvariant);
BENCHMARK_CAPTURE(bm_distance, log_frobenius, DistanceKind::kLogFrobenius);
BENCHMARK(bm_geodesic_learned)->Arg(3)->Arg(9);

BENCHMARK_MAIN();
