// core/src/itml.cpp

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

#include "spdml/itml.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spdml/linalg.hpp"
#include "spdml/random.hpp"

namespace spdml {

MahalanobisMetric::MahalanobisMetric(SpdMatrix m, VecConvention convention)
    : m_(std::move(m)), convention_(std::move(convention)) {}

double logdet_div(const SpdMatrix& p, const SpdMatrix& q) {
  if (p.order() != q.order()) {
    throw ShapeError("logdet_div: order mismatch");
  }
  const int n = p.order();
  Eigen::LLT<Eigen::MatrixXd> llt_q(q.mat());
  Eigen::LLT<Eigen::MatrixXd> llt_p(p.mat());
  if (llt_q.info() != Eigen::Success || llt_p.info() != Eigen::Success) {
    throw NumericalError("logdet_div: Cholesky factorization failed");
  }
  const Eigen::MatrixXd q_inv =
      llt_q.solve(Eigen::MatrixXd::Identity(n, n));
  const double trace_pq = p.mat().cwiseProduct(q_inv).sum();
  const double logdet_p =
      2.0 * Eigen::MatrixXd(llt_p.matrixL()).diagonal().array().log().sum();
  const double logdet_q =
      2.0 * Eigen::MatrixXd(llt_q.matrixL()).diagonal().array().log().sum();
  return trace_pq - (logdet_p - logdet_q) - n;
}

namespace {

int nearest_rank_index(double q, int count) {
  int k = static_cast<int>(std::ceil(q / 100.0 * count));
  return std::clamp(k, 1, count) - 1;
}

void check_percentiles(double a, double b) {
  if (!(0.0 < a && a < b && b < 100.0)) {
    std::ostringstream msg;
    msg << "percentiles must satisfy 0 < a < b < 100, got a=" << a
        << " b=" << b;
    throw ConfigError(msg.str());
  }
}

// Whitens rows of x by the Cholesky factor of m0 so that pair distances are
// plain squared Euclidean norms.
Eigen::MatrixXd whiten(const Eigen::MatrixXd& x, const Eigen::MatrixXd& m0) {
  if (m0.size() == 0) return x;
  if (m0.rows() != x.cols() || m0.cols() != x.cols()) {
    throw ShapeError("percentile_thresholds: m0 dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (m0 + m0.transpose()));
  if (llt.info() != Eigen::Success) {
    throw ConfigError("percentile_thresholds: m0 is not positive definite");
  }
  return x * Eigen::MatrixXd(llt.matrixL());
}

}  // namespace

std::pair<double, double> percentile_thresholds(const Eigen::MatrixXd& points,
                                                const Eigen::MatrixXd& m0,
                                                double a, double b,
                                                std::uint64_t seed) {
  check_percentiles(a, b);
  const int n = static_cast<int>(points.rows());
  if (n < 2) {
    throw InsufficientDataError(
        "percentile_thresholds: need at least 2 points");
  }
  const Eigen::MatrixXd y = whiten(points, m0);
  std::vector<double> dists;
  if (n <= 1000) {
    dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        dists.push_back((y.row(i) - y.row(j)).squaredNorm());
      }
    }
  } else {
    constexpr int kSampled = 100000;
    auto rng = make_rng(seed, 0x70ce);
    const auto bound = static_cast<std::uint64_t>(n);
    dists.reserve(kSampled);
    while (static_cast<int>(dists.size()) < kSampled) {
      const auto i = static_cast<Eigen::Index>(uniform_below(rng, bound));
      const auto j = static_cast<Eigen::Index>(uniform_below(rng, bound));
      if (i == j) continue;
      dists.push_back((y.row(i) - y.row(j)).squaredNorm());
    }
  }
  std::sort(dists.begin(), dists.end());
  const int count = static_cast<int>(dists.size());
  return {dists[nearest_rank_index(a, count)],
          dists[nearest_rank_index(b, count)]};
}

namespace {

struct Problem {
  int n = 0;
  int d = 0;
  int c = 0;
  Eigen::MatrixXd m0;
  double l = 0.0;
  double u = 0.0;
  int max_sweeps = 0;
};

Problem validate(const Eigen::MatrixXd& points,
                 const std::vector<PairConstraint>& constraints,
                 const ItmlConfig& config) {
  Problem pr;
  pr.n = static_cast<int>(points.rows());
  pr.d = static_cast<int>(points.cols());
  pr.c = static_cast<int>(constraints.size());
  if (pr.c == 0) {
    throw InsufficientDataError("itml_fit: constraint list is empty");
  }
  if (pr.n < 2 || pr.d < 1) {
    throw InsufficientDataError("itml_fit: need at least 2 points");
  }
  for (const PairConstraint& pc : constraints) {
    if (pc.i < 0 || pc.i >= pr.n || pc.j < 0 || pc.j >= pr.n) {
      std::ostringstream msg;
      msg << "itml_fit: constraint (" << pc.i << ", " << pc.j
          << ") indexes outside the " << pr.n << " points";
      throw ConfigError(msg.str());
    }
    if (pc.i == pc.j) {
      std::ostringstream msg;
      msg << "itml_fit: constraint pairs item " << pc.i << " with itself";
      throw ConfigError(msg.str());
    }
  }
  if (!(config.gamma > 0.0)) {
    throw ConfigError("itml_fit: gamma must be positive");
  }
  if (!(config.conv_tol > 0.0)) {
    throw ConfigError("itml_fit: conv_tol must be positive");
  }
  if (config.max_sweeps < 0) {
    throw ConfigError("itml_fit: max_sweeps must be nonnegative");
  }

  if (config.m0.size() == 0) {
    pr.m0 = Eigen::MatrixXd::Identity(pr.d, pr.d);
  } else {
    if (config.m0.rows() != pr.d || config.m0.cols() != pr.d) {
      throw ShapeError("itml_fit: m0 dimension does not match the points");
    }
    pr.m0 = SpdMatrix(config.m0).mat();  // admission check
  }

  if (config.explicit_l_u) {
    pr.l = config.explicit_l_u->first;
    pr.u = config.explicit_l_u->second;
    if (!(pr.l <= pr.u)) {
      throw ConfigError("itml_fit: explicit thresholds need l <= u");
    }
  } else {
    check_percentiles(config.percentile_a, config.percentile_b);
    std::tie(pr.l, pr.u) =
        percentile_thresholds(points, pr.m0, config.percentile_a,
                              config.percentile_b, config.seed);
  }
  if (!(pr.l > 0.0) || !(pr.u > 0.0)) {
    std::ostringstream msg;
    msg << "itml_fit: degenerate thresholds l=" << pr.l << " u=" << pr.u
        << " (training distances collapse); supply explicit_l_u or more "
           "varied data";
    throw SolverError(msg.str());
  }

  pr.max_sweeps = config.max_sweeps > 0
                      ? config.max_sweeps
                      : std::max(1, (100000 + pr.c - 1) / pr.c);
  return pr;
}

double slack_term(double gamma, const Eigen::VectorXd& zeta,
                  const Eigen::VectorXd& zeta0) {
  if (std::isinf(gamma)) return 0.0;  // zeta never moves under hard gamma
  double acc = 0.0;
  for (Eigen::Index c = 0; c < zeta.size(); ++c) {
    const double r = zeta(c) / zeta0(c);
    acc += r - std::log(r) - 1.0;
  }
  return gamma * acc;
}

}  // namespace

std::pair<MahalanobisMetric, FitReport> itml_fit(
    const Eigen::MatrixXd& points,
    const std::vector<PairConstraint>& constraints, const ItmlConfig& config) {
  const Problem pr = validate(points, constraints, config);

  // Constraint difference vectors and the degenerate (zero-difference) set.
  Eigen::MatrixXd diffs(pr.c, pr.d);
  std::vector<int> skipped;
  std::vector<double> delta(pr.c);
  for (int c = 0; c < pr.c; ++c) {
    diffs.row(c) = points.row(constraints[c].i) - points.row(constraints[c].j);
    delta[c] = constraints[c].kind == PairLabel::kSimilar ? 1.0 : -1.0;
    if (diffs.row(c).squaredNorm() == 0.0) skipped.push_back(c);
  }

  Eigen::MatrixXd m = pr.m0;
  Eigen::VectorXd zeta0(pr.c);
  for (int c = 0; c < pr.c; ++c) {
    zeta0(c) = constraints[c].kind == PairLabel::kSimilar ? pr.l : pr.u;
  }
  Eigen::VectorXd zeta = zeta0;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(pr.c);
  Eigen::VectorXd lambda_prev = Eigen::VectorXd::Zero(pr.c);

  const double gamma = config.gamma;
  const double gamma_proj =
      std::isinf(gamma) ? 1.0 : gamma / (gamma + 1.0);

  std::vector<int> order(pr.c);
  std::iota(order.begin(), order.end(), 0);

  int sweeps = 0;
  bool converged = false;
  while (sweeps < pr.max_sweeps) {
    ++sweeps;
    if (config.shuffle) {
      auto rng = make_rng(config.seed, static_cast<std::uint64_t>(sweeps));
      shuffle_inplace(order, rng);
    }
    for (int c : order) {
      const Eigen::VectorXd v = diffs.row(c).transpose();
      const Eigen::VectorXd mv = m * v;
      const double p = v.dot(mv);
      if (p == 0.0 && diffs.row(c).squaredNorm() == 0.0) {
        continue;  // degenerate constraint, already recorded
      }
      if (!(p > 0.0)) {
        std::ostringstream msg;
        msg << "itml_fit: quadratic form " << p << " lost positivity at sweep "
            << sweeps << ", constraint " << c;
        throw NumericalError(msg.str());
      }
      // Exact Bregman projection of (M, zeta) onto constraint c, clipped at
      // the accumulated dual so the cyclic corrections stay valid.
      const double dlt = delta[c];
      const double alpha =
          std::min(lambda(c), dlt * gamma_proj * (1.0 / p - 1.0 / zeta(c)));
      const double denom = 1.0 - dlt * alpha * p;
      if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "itml_fit: projection step diverged at sweep " << sweeps
            << ", constraint " << c;
        throw NumericalError(msg.str());
      }
      const double beta = dlt * alpha / denom;
      if (!std::isinf(gamma)) {
        zeta(c) = gamma * zeta(c) / (gamma + dlt * alpha * zeta(c));
        if (!(zeta(c) > 0.0)) {
          std::ostringstream msg;
          msg << "itml_fit: slack variable collapsed at sweep " << sweeps
              << ", constraint " << c;
          throw NumericalError(msg.str());
        }
      }
      lambda(c) -= alpha;
      m.noalias() += beta * mv * mv.transpose();
    }
    if (!m.allFinite()) {
      std::ostringstream msg;
      msg << "itml_fit: non-finite entries in M after sweep " << sweeps;
      throw NumericalError(msg.str());
    }
    const double normsum = lambda.norm() + lambda_prev.norm();
    if (normsum == 0.0) {
      converged = true;  // no projection ever engaged; prior is feasible
      break;
    }
    const double conv = (lambda - lambda_prev).cwiseAbs().sum() / normsum;
    if (conv < config.conv_tol) {
      converged = true;
      break;
    }
    lambda_prev = lambda;
  }

  // Accumulated rank-one roundoff can push an eigenvalue of the iterate a
  // hair below the admission floor when the optimum sits near the cone
  // boundary. Flooring the spectrum perturbs M at rounding scale only.
  m = (0.5 * (m + m.transpose())).eval();
  if (!SpdMatrix::passes_admission(SymMatrix(m))) {
    const EigDecomp eig = sym_eig(SymMatrix(m));
    const double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
    const double floor = 10.0 * SpdMatrix::admission_tolerance(radius);
    const Eigen::VectorXd clamped = eig.eigenvalues.cwiseMax(floor);
    m = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.transpose();
    m = (0.5 * (m + m.transpose())).eval();
  }
  MahalanobisMetric metric{SpdMatrix(SymMatrix(m))};
  const SpdMatrix m0_spd{SymMatrix(pr.m0)};

  FitReport report;
  report.sweeps = sweeps;
  report.converged = converged;
  report.l = pr.l;
  report.u = pr.u;
  report.skipped = std::move(skipped);
  report.objective =
      logdet_div(metric.m(), m0_spd) + slack_term(gamma, zeta, zeta0);
  report.violations.resize(pr.c);
  for (int c = 0; c < pr.c; ++c) {
    const Eigen::VectorXd v = diffs.row(c).transpose();
    const double p = v.dot(metric.m().mat() * v);
    report.violations[c] = constraints[c].kind == PairLabel::kSimilar
                               ? std::max(0.0, p - zeta(c))
                               : std::max(0.0, zeta(c) - p);
  }
  return {std::move(metric), std::move(report)};
}

double mahalanobis_sq(const MahalanobisMetric& metric, const Eigen::VectorXd& v1,
                      const Eigen::VectorXd& v2) {
  if (v1.size() != metric.dim() || v2.size() != metric.dim()) {
    std::ostringstream msg;
    msg << "mahalanobis_sq: expected vectors of dimension " << metric.dim()
        << ", got " << v1.size() << " and " << v2.size();
    throw ShapeError(msg.str());
  }
  const Eigen::VectorXd diff = v1 - v2;
  return std::max(0.0, diff.dot(metric.m().mat() * diff));
}

double mahalanobis_dist(const MahalanobisMetric& metric,
                        const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) {
  return std::sqrt(mahalanobis_sq(metric, v1, v2));
}

}  // namespace spdml
