// core/src/types.cpp

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

#include "spdml/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <utility>

namespace spdml {

SymMatrix::SymMatrix(Eigen::MatrixXd a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << "SymMatrix: expected a nonempty square matrix, got " << a.rows()
        << "x" << a.cols();
    throw ShapeError(msg.str());
  }
  if (!a.allFinite()) {
    throw NumericalError("SymMatrix: input contains non-finite entries");
  }
  m_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (other.order() != order()) {
    throw ShapeError("SymMatrix: order mismatch in addition");
  }
  return SymMatrix(m_ + other.m_);
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  if (other.order() != order()) {
    throw ShapeError("SymMatrix: order mismatch in subtraction");
  }
  return SymMatrix(m_ - other.m_);
}

SymMatrix SymMatrix::scaled(double s) const { return SymMatrix(s * m_); }

double SpdMatrix::admission_tolerance(double spectral_radius) {
  return 1e-10 * std::max(1.0, spectral_radius);
}

namespace {

double smallest_eigenvalue(const SymMatrix& s, double* spectral_radius) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mat(),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("SpdMatrix: eigenvalue computation failed");
  }
  const auto& ev = es.eigenvalues();
  *spectral_radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0);
}

}  // namespace

bool SpdMatrix::passes_admission(const SymMatrix& s) {
  double radius = 0.0;
  double min_eig = smallest_eigenvalue(s, &radius);
  return min_eig > admission_tolerance(radius);
}

SpdMatrix::SpdMatrix(SymMatrix s) : base_(std::move(s)), min_eig_(0.0) {
  double radius = 0.0;
  min_eig_ = smallest_eigenvalue(base_, &radius);
  const double tol = admission_tolerance(radius);
  if (!(min_eig_ > tol)) {
    std::ostringstream msg;
    msg << "SpdMatrix: matrix of order " << base_.order()
        << " fails SPD admission: min eigenvalue " << min_eig_
        << " <= tolerance " << tol;
    throw NotSpdError(msg.str());
  }
}

SymVec::SymVec(int order, Eigen::VectorXd coords)
    : n_(order), coords_(std::move(coords)) {
  if (n_ <= 0) {
    throw ShapeError("SymVec: order must be positive");
  }
  if (coords_.size() != sym_vec_dim(n_)) {
    std::ostringstream msg;
    msg << "SymVec: order " << n_ << " needs " << sym_vec_dim(n_)
        << " coordinates, got " << coords_.size();
    throw ShapeError(msg.str());
  }
}

}  // namespace spdml
