// benchmarks/bench_itml.cpp

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
#include <utility>
#include <vector>

#include "spdml/eval.hpp"
#include "spdml/itml.hpp"

namespace {

using namespace spdml;

struct FitProblem {
  Eigen::MatrixXd points;
  std::vector<PairConstraint> constraints;
};

FitProblem make_problem(int pairs_per_label) {
  SynthConfig cfg;
  const PairDataset ds = synth_spd_pairs(cfg, pairs_per_label, 2, 17);
  const auto embedded = represent_all(ds.items, RepresentationKind::kLogEuclidean);
  Eigen::MatrixXd points(static_cast<int>(embedded.size()),
                         embedded.front().size());
  for (int i = 0; i < points.rows(); ++i) {
    points.row(i) = embedded[static_cast<std::size_t>(i)].transpose();
  }
  return {std::move(points), ds.pairs};
}

void bm_itml_fit(benchmark::State& state) {
  const FitProblem problem = make_problem(static_cast<int>(state.range(0)));
  ItmlConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(itml_fit(problem.points, problem.constraints, cfg));
  }
}

void bm_logdet_div(benchmark::State& state) {
  SynthConfig cfg;
  cfg.order = static_cast<int>(state.range(0));
  cfg.k = 2;
  cfg.per_class = 1;
  const auto items = synth_spd_clusters(cfg, 23).items;
  for (auto _ : state) {
    benchmark::DoNotOptimize(logdet_div(items[0], items[1]));
  }
}

}  // namespace

BENCHMARK(bm_itml_fit)->Arg(30)->Arg(120);
BENCHMARK(bm_logdet_div)->Arg(3)->Arg(9);

BENCHMARK_MAIN();
