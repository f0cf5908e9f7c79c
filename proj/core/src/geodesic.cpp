// core/src/geodesic.cpp

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

#include "spdml/geodesic.hpp"

#include <algorithm>
#include <utility>

#include "spdml/errors.hpp"

namespace spdml {

LearnedMetric::LearnedMetric(int order, MahalanobisMetric inner,
                             MetricProvenance provenance)
    : order_(order), inner_(std::move(inner)),
      provenance_(std::move(provenance)) {
  if (order_ < 1) {
    throw ShapeError("LearnedMetric: order must be positive, got " +
                     std::to_string(order_));
  }
  if (inner_.dim() != sym_vec_dim(order_)) {
    throw ShapeError("LearnedMetric: inner metric dimension " +
                     std::to_string(inner_.dim()) + " does not match order " +
                     std::to_string(order_) + " (expected " +
                     std::to_string(sym_vec_dim(order_)) + ")");
  }
}

SymVec embed(const SpdMatrix& p) { return vec(spd_log(p)); }

LearnedMetric learn_geodesic(const std::vector<SpdMatrix>& items,
                             const std::vector<PairConstraint>& constraints,
                             const ItmlConfig& config) {
  if (items.empty()) {
    throw InsufficientDataError("learn_geodesic: no items given");
  }
  const int order = items.front().order();
  Eigen::MatrixXd points(static_cast<Eigen::Index>(items.size()),
                         sym_vec_dim(order));
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].order() != order) {
      throw ShapeError("learn_geodesic: item " + std::to_string(i) +
                       " has order " + std::to_string(items[i].order()) +
                       " but item 0 has order " + std::to_string(order));
    }
    points.row(static_cast<Eigen::Index>(i)) =
        embed(items[i]).coords().transpose();
  }

  auto [inner, report] = itml_fit(points, constraints, config);

  MetricProvenance prov;
  prov.items = static_cast<int>(items.size());
  for (const PairConstraint& c : constraints) {
    if (c.kind == PairLabel::kSimilar) {
      ++prov.similar_constraints;
    } else {
      ++prov.dissimilar_constraints;
    }
  }
  prov.gamma = config.gamma;
  prov.percentile_a = config.percentile_a;
  prov.percentile_b = config.percentile_b;
  prov.conv_tol = config.conv_tol;
  prov.max_sweeps = config.max_sweeps;
  prov.l = report.l;
  prov.u = report.u;
  prov.sweeps = report.sweeps;
  prov.converged = report.converged;
  prov.objective = report.objective;
  prov.max_violation = 0.0;
  for (double v : report.violations) {
    prov.max_violation = std::max(prov.max_violation, v);
  }
  return LearnedMetric(order, std::move(inner), std::move(prov));
}

double geodesic_sq(const LearnedMetric& metric, const SpdMatrix& p1,
                   const SpdMatrix& p2) {
  if (p1.order() != metric.order() || p2.order() != metric.order()) {
    throw ShapeError("geodesic_sq: matrix orders (" +
                     std::to_string(p1.order()) + ", " +
                     std::to_string(p2.order()) +
                     ") do not match metric order " +
                     std::to_string(metric.order()));
  }
  return mahalanobis_sq(metric.inner(), embed(p1).coords(),
                        embed(p2).coords());
}

double geodesic_dist(const LearnedMetric& metric, const SpdMatrix& p1,
                     const SpdMatrix& p2) {
  return std::sqrt(geodesic_sq(metric, p1, p2));
}

}  // namespace spdml
