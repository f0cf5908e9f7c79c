// core/src/distances.cpp

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

#include "spdml/distances.hpp"

#include <Eigen/Cholesky>
#include <array>
#include <cmath>
#include <sstream>

#include "spdml/linalg.hpp"

namespace spdml {

namespace {

constexpr std::array<DistanceKind, 6> kAllKinds = {
    DistanceKind::kFrobenius,       DistanceKind::kCholeskyFrobenius,
    DistanceKind::kJDivergence,     DistanceKind::kJbld,
    DistanceKind::kAffineInvariant, DistanceKind::kLogFrobenius,
};

// Interior quantities of the square-root distances are provably nonnegative;
// values in [-1e-12, 0) are rounding and clamp to zero, anything below that
// is a hard failure.
double checked_sqrt(double value, const char* what) {
  if (value < 0.0) {
    if (value >= -1e-12) return 0.0;
    std::ostringstream msg;
    msg << what << ": interior value " << value << " is negative beyond -1e-12";
    throw NumericalError(msg.str());
  }
  return std::sqrt(value);
}

Eigen::MatrixXd spd_inverse(const SpdMatrix& p) {
  const int n = p.order();
  Eigen::LLT<Eigen::MatrixXd> llt(p.mat());
  if (llt.info() != Eigen::Success) {
    throw NumericalError("spd_inverse: Cholesky solve failed");
  }
  return llt.solve(Eigen::MatrixXd::Identity(n, n));
}

double logdet(const SpdMatrix& p) {
  Eigen::LLT<Eigen::MatrixXd> llt(p.mat());
  if (llt.info() != Eigen::Success) {
    throw NumericalError("logdet: Cholesky factorization failed");
  }
  return 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

double dist_frobenius(const SpdMatrix& p1, const SpdMatrix& p2) {
  return (p1.mat() - p2.mat()).norm();
}

double dist_cholesky_frobenius(const SpdMatrix& p1, const SpdMatrix& p2) {
  return (cholesky(p1) - cholesky(p2)).norm();
}

double dist_j_divergence(const SpdMatrix& p1, const SpdMatrix& p2) {
  const int n = p1.order();
  // tr(P1 P2^-1) = sum_ij P1_ij (P2^-1)_ij for symmetric operands.
  const double t12 = p1.mat().cwiseProduct(spd_inverse(p2)).sum();
  const double t21 = p2.mat().cwiseProduct(spd_inverse(p1)).sum();
  return 0.5 * checked_sqrt(t12 + t21 - 2.0 * n, "j-divergence");
}

double dist_jbld(const SpdMatrix& p1, const SpdMatrix& p2) {
  const SpdMatrix mid(SymMatrix(0.5 * (p1.mat() + p2.mat())));
  const double inner = logdet(mid) - 0.5 * (logdet(p1) + logdet(p2));
  return checked_sqrt(inner, "jbld");
}

double dist_affine_invariant(const SpdMatrix& p1, const SpdMatrix& p2) {
  EigDecomp e = sym_eig(p1.sym());
  Eigen::VectorXd inv_sqrt = e.eigenvalues.array().rsqrt();
  Eigen::MatrixXd w = e.eigenvectors * inv_sqrt.asDiagonal() *
                      e.eigenvectors.transpose();  // P1^{-1/2}
  SpdMatrix whitened{SymMatrix(w * p2.mat() * w)};
  return spd_log(whitened).frobenius_norm();
}

double dist_log_frobenius(const SpdMatrix& p1, const SpdMatrix& p2) {
  return (spd_log(p1) - spd_log(p2)).frobenius_norm();
}

}  // namespace

DistanceProperties properties(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kFrobenius:
      return {true, true, false, false, false, true, false};
    case DistanceKind::kCholeskyFrobenius:
      return {true, true, false, false, false, false, false};
    case DistanceKind::kJDivergence:
      return {true, false, false, true, true, true, true};
    case DistanceKind::kJbld:
      return {true, false, false, true, true, true, true};
    case DistanceKind::kAffineInvariant:
      return {true, true, true, true, true, true, true};
    case DistanceKind::kLogFrobenius:
      return {true, true, true, false, true, true, true};
  }
  throw InternalError("properties: unknown distance kind");
}

std::string_view name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kFrobenius:
      return "frobenius";
    case DistanceKind::kCholeskyFrobenius:
      return "cholesky-frobenius";
    case DistanceKind::kJDivergence:
      return "j-divergence";
    case DistanceKind::kJbld:
      return "jbld";
    case DistanceKind::kAffineInvariant:
      return "affine-invariant";
    case DistanceKind::kLogFrobenius:
      return "log-frobenius";
  }
  throw InternalError("name: unknown distance kind");
}

std::optional<DistanceKind> parse_distance_kind(std::string_view text) {
  for (DistanceKind kind : kAllKinds) {
    if (name(kind) == text) return kind;
  }
  return std::nullopt;
}

std::span<const DistanceKind> all_distance_kinds() { return kAllKinds; }

double distance(DistanceKind kind, const SpdMatrix& p1, const SpdMatrix& p2) {
  if (p1.order() != p2.order()) {
    std::ostringstream msg;
    msg << "distance(" << name(kind) << "): order mismatch " << p1.order()
        << " vs " << p2.order();
    throw ShapeError(msg.str());
  }
  switch (kind) {
    case DistanceKind::kFrobenius:
      return dist_frobenius(p1, p2);
    case DistanceKind::kCholeskyFrobenius:
      return dist_cholesky_frobenius(p1, p2);
    case DistanceKind::kJDivergence:
      return dist_j_divergence(p1, p2);
    case DistanceKind::kJbld:
      return dist_jbld(p1, p2);
    case DistanceKind::kAffineInvariant:
      return dist_affine_invariant(p1, p2);
    case DistanceKind::kLogFrobenius:
      return dist_log_frobenius(p1, p2);
  }
  throw InternalError("distance: unknown distance kind");
}

}  // namespace spdml
