// core/src/linalg.cpp

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

#include "spdml/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace spdml {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

}  // namespace

EigDecomp sym_eig(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mat());
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sym_eig: eigendecomposition of the order-" << s.order()
        << " matrix (Frobenius norm " << s.frobenius_norm()
        << ") did not converge";
    throw NumericalError(msg.str());
  }
  return EigDecomp{es.eigenvalues(), es.eigenvectors()};
}

SymMatrix spd_log(const SpdMatrix& p) {
  EigDecomp e = sym_eig(p.sym());
  Eigen::VectorXd logs = e.eigenvalues.array().log();
  return SymMatrix(e.eigenvectors * logs.asDiagonal() *
                   e.eigenvectors.transpose());
}

SpdMatrix sym_exp(const SymMatrix& s) {
  EigDecomp e = sym_eig(s);
  const double max_exponent =
      std::log(std::numeric_limits<double>::max());  // about 709.78
  if (e.eigenvalues(e.eigenvalues.size() - 1) >= max_exponent) {
    std::ostringstream msg;
    msg << "sym_exp: eigenvalue " << e.eigenvalues(e.eigenvalues.size() - 1)
        << " overflows the matrix exponential";
    throw NumericalError(msg.str());
  }
  Eigen::VectorXd exps = e.eigenvalues.array().exp();
  return SpdMatrix(SymMatrix(e.eigenvectors * exps.asDiagonal() *
                             e.eigenvectors.transpose()));
}

Eigen::MatrixXd cholesky(const SpdMatrix& p) {
  Eigen::LLT<Eigen::MatrixXd> llt(p.mat());
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "cholesky: non-positive pivot on the order-" << p.order()
        << " matrix (min eigenvalue " << p.min_eigenvalue() << ")";
    throw NumericalError(msg.str());
  }
  return llt.matrixL();
}

SymVec vec(const SymMatrix& s) {
  const int n = s.order();
  Eigen::VectorXd coords(sym_vec_dim(n));
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      coords(idx++) = (i == j) ? s(i, j) : kSqrt2 * s(i, j);
    }
  }
  return SymVec(n, std::move(coords));
}

SymMatrix unvec(const SymVec& v) {
  const int n = v.order();
  Eigen::MatrixXd m(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double c = v.coords()(idx++);
      if (i == j) {
        m(i, i) = c;
      } else {
        m(i, j) = c / kSqrt2;
        m(j, i) = m(i, j);
      }
    }
  }
  return SymMatrix(std::move(m));
}

SpdMatrix lie_product(const SpdMatrix& p1, const SpdMatrix& p2) {
  if (p1.order() != p2.order()) {
    throw ShapeError("lie_product: order mismatch");
  }
  return sym_exp(spd_log(p1) + spd_log(p2));
}

}  // namespace spdml
