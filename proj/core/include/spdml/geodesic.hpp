// core/include/spdml/geodesic.hpp

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

#ifndef SPDML_GEODESIC_HPP_
#define SPDML_GEODESIC_HPP_

#include <string>
#include <vector>

#include "spdml/itml.hpp"
#include "spdml/linalg.hpp"

namespace spdml {

/// Where a learned metric came from: echoed configuration plus fit outcome.
struct MetricProvenance {
  int items = 0;
  int similar_constraints = 0;
  int dissimilar_constraints = 0;
  double gamma = kDefaultGamma;
  double percentile_a = 5.0;
  double percentile_b = 95.0;
  double conv_tol = 1e-3;
  int max_sweeps = 0;
  double l = 0.0;
  double u = 0.0;
  int sweeps = 0;
  bool converged = false;
  double objective = 0.0;
  double max_violation = 0.0;
};

/// A learned inner product on the tangent space at identity. Distances it
/// induces on SPD matrices of order n are geodesic distances of the
/// corresponding flat Riemannian structure.
class LearnedMetric {
 public:
  LearnedMetric(int order, MahalanobisMetric inner,
                MetricProvenance provenance = {});

  int order() const { return order_; }
  const MahalanobisMetric& inner() const { return inner_; }
  const MetricProvenance& provenance() const { return provenance_; }

 private:
  int order_;
  MahalanobisMetric inner_;
  MetricProvenance provenance_;
};

/// Tangent-space coordinates of P: vec(log P). Maps the identity to zero.
SymVec embed(const SpdMatrix& p);

/// Learns a geodesic distance on SPD matrices of a common order: embeds all
/// items at the identity tangent space and runs the Mahalanobis solver there,
/// with percentile thresholds computed on the embedded vectors.
LearnedMetric learn_geodesic(const std::vector<SpdMatrix>& items,
                             const std::vector<PairConstraint>& constraints,
                             const ItmlConfig& config);

/// Quadratic form of the learned geodesic distance.
double geodesic_sq(const LearnedMetric& metric, const SpdMatrix& p1,
                   const SpdMatrix& p2);

/// Square root of geodesic_sq; with M = I this is the log-Frobenius distance.
double geodesic_dist(const LearnedMetric& metric, const SpdMatrix& p1,
                     const SpdMatrix& p2);

}  // namespace spdml

#endif  // SPDML_GEODESIC_HPP_
