// core/include/spdml/itml.hpp

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

#ifndef SPDML_ITML_HPP_
#define SPDML_ITML_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spdml/linalg.hpp"
#include "spdml/types.hpp"

namespace spdml {

enum class PairLabel { kSimilar, kDissimilar };

/// One supervision unit: items i and j are similar or dissimilar.
struct PairConstraint {
  int i = 0;
  int j = 0;
  PairLabel kind = PairLabel::kSimilar;
};

/// An SPD matrix M parametrizing a learned inner product on R^d, together
/// with the vec() convention the coordinates were produced under.
class MahalanobisMetric {
 public:
  explicit MahalanobisMetric(SpdMatrix m, VecConvention convention = {});

  int dim() const { return m_.order(); }
  const SpdMatrix& m() const { return m_; }
  const VecConvention& convention() const { return convention_; }

 private:
  SpdMatrix m_;
  VecConvention convention_;
};

inline constexpr double kDefaultGamma = 3162.2776601683795;  // 10^3.5

/// Solver configuration. Defaults follow the standard parameter set
/// M0 = I, gamma = 10^3.5, a = 5, b = 95.
struct ItmlConfig {
  Eigen::MatrixXd m0;  // prior matrix; empty means identity
  double gamma = kDefaultGamma;
  double percentile_a = 5.0;
  double percentile_b = 95.0;
  int max_sweeps = 0;  // 0: automatic, about 1e5 constraint visits total
  double conv_tol = 1e-3;  // on the per-sweep relative change of the duals
  std::optional<std::pair<double, double>> explicit_l_u;
  bool shuffle = false;  // seeded shuffle of the visiting order per sweep
  std::uint64_t seed = 0;
};

/// Outcome summary of a fit.
struct FitReport {
  double objective = 0.0;  // LogDet objective at the returned (M, zeta)
  int sweeps = 0;
  bool converged = false;
  double l = 0.0;  // similar-pair threshold actually used
  double u = 0.0;  // dissimilar-pair threshold actually used
  std::vector<double> violations;  // per-constraint violation magnitude
  std::vector<int> skipped;  // constraints with identical endpoints
};

/// LogDet (Stein) divergence trace(P Q^-1) - ln det(P Q^-1) - n.
double logdet_div(const SpdMatrix& p, const SpdMatrix& q);

/// a-th and b-th nearest-rank percentiles of the squared Mahalanobis
/// distances under m0 over pairs of the given points (all pairs up to 1000
/// points, a seeded 100000-pair sample beyond that). Rows of `points` are
/// the points; empty `m0` means identity.
std::pair<double, double> percentile_thresholds(const Eigen::MatrixXd& points,
                                                const Eigen::MatrixXd& m0,
                                                double a, double b,
                                                std::uint64_t seed = 0);

/// Learns M by cyclic Bregman projections with slack. Rows of `points` are
/// the training vectors; constraints index into them. Non-convergence at the
/// sweep budget is reported, not thrown.
std::pair<MahalanobisMetric, FitReport> itml_fit(
    const Eigen::MatrixXd& points,
    const std::vector<PairConstraint>& constraints, const ItmlConfig& config);

/// Quadratic form (v1 - v2)^T M (v1 - v2).
double mahalanobis_sq(const MahalanobisMetric& metric, const Eigen::VectorXd& v1,
                      const Eigen::VectorXd& v2);

/// Square root of mahalanobis_sq; a true metric for SPD M.
double mahalanobis_dist(const MahalanobisMetric& metric,
                        const Eigen::VectorXd& v1, const Eigen::VectorXd& v2);

}  // namespace spdml

#endif  // SPDML_ITML_HPP_
