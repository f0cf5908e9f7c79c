// core/include/spdml/types.hpp

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

#ifndef SPDML_TYPES_HPP_
#define SPDML_TYPES_HPP_

#include <Eigen/Core>

#include "spdml/errors.hpp"

namespace spdml {

/// Dimension of the vec() image of an n x n symmetric matrix.
constexpr int sym_vec_dim(int n) { return n * (n + 1) / 2; }

/// An n x n real symmetric matrix.
///
/// The constructor symmetrizes its input via (A + A^T)/2 rather than reject
/// asymmetric matrices, since text round-trips introduce last-bit asymmetry.
/// All entries must be finite. Values are immutable after construction.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd a);

  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  SymMatrix scaled(double s) const;

  double frobenius_norm() const { return m_.norm(); }

 private:
  Eigen::MatrixXd m_;
};

/// A symmetric positive definite matrix.
///
/// Admission requires the smallest eigenvalue to exceed
/// 1e-10 * max(1, spectral radius); construction throws NotSpdError
/// otherwise. The smallest eigenvalue is cached.
class SpdMatrix {
 public:
  explicit SpdMatrix(SymMatrix s);
  explicit SpdMatrix(Eigen::MatrixXd a) : SpdMatrix(SymMatrix(std::move(a))) {}

  int order() const { return base_.order(); }
  const SymMatrix& sym() const { return base_; }
  const Eigen::MatrixXd& mat() const { return base_.mat(); }
  double min_eigenvalue() const { return min_eig_; }

  /// The admission threshold for a given spectral radius.
  static double admission_tolerance(double spectral_radius);

  /// True if the symmetric matrix would pass SPD admission.
  static bool passes_admission(const SymMatrix& s);

 private:
  SymMatrix base_;
  double min_eig_;
};

/// The vec() image of a symmetric matrix: the row-major upper triangle with
/// off-diagonal entries weighted by sqrt(2), so that the 2-norm of the
/// coordinates equals the Frobenius norm of the source matrix.
class SymVec {
 public:
  SymVec(int order, Eigen::VectorXd coords);

  int order() const { return n_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  int n_;
  Eigen::VectorXd coords_;
};

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvector columns, U diag(lambda) U^T = S.
struct EigDecomp {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

}  // namespace spdml

#endif  // SPDML_TYPES_HPP_
