// benchmarks/bench_eval.cpp

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

#include <vector>

#include "spdml/descriptor.hpp"
#include "spdml/eval.hpp"
#include "spdml/random.hpp"

namespace {

using namespace spdml;

ImageBuffer sample_image(int w, int h) {
  auto rng = make_rng(99);
  std::vector<double> px(3 * static_cast<std::size_t>(w) * h);
  for (double& v : px) {
    v = uniform_real(rng);
  }
  return ImageBuffer(w, h, px);
}

void bm_extract(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const ImageBuffer img = sample_image(side, side);
  const DescriptorConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract(img, cfg));
  }
}

void bm_extract_resized(benchmark::State& state) {
  const ImageBuffer img = sample_image(128, 128);
  DescriptorConfig cfg;
  cfg.resize_to = {{32, 32}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract(img, cfg));
  }
}

void bm_represent_all(benchmark::State& state) {
  SynthConfig cfg;
  const std::vector<SpdMatrix> items = synth_spd_clusters(cfg, 5).items;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        represent_all(items, RepresentationKind::kLogEuclidean));
  }
}

void bm_kmeans(benchmark::State& state) {
  SynthConfig cfg;
  cfg.per_class = static_cast<int>(state.range(0));
  const ClusterDataset ds = synth_spd_clusters(cfg, 13);
  const auto points = represent_all(ds.items, RepresentationKind::kLogEuclidean);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans(points, cfg.k, 20, 13));
  }
}

}  // namespace

BENCHMARK(bm_extract)->Arg(32)->Arg(64);
BENCHMARK(bm_extract_resized);
BENCHMARK(bm_represent_all);
BENCHMARK(bm_kmeans)->Arg(40)->Arg(100);

BENCHMARK_MAIN();
