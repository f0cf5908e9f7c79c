// core/include/spdml/linalg.hpp

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

#ifndef SPDML_LINALG_HPP_
#define SPDML_LINALG_HPP_

#include <string>

#include "spdml/types.hpp"

namespace spdml {

/// The vec() layout this library uses. Serialized into model and descriptor
/// files; loading a model written under a different convention is an error.
struct VecConvention {
  std::string ordering = "upper-row-major";
  std::string offdiag_weight = "sqrt2";

  bool operator==(const VecConvention&) const = default;
};

/// Eigendecomposition of a symmetric matrix. Eigenvalues come back ascending
/// with orthonormal eigenvectors.
EigDecomp sym_eig(const SymMatrix& s);

/// Matrix logarithm of an SPD matrix: U diag(ln lambda) U^T.
SymMatrix spd_log(const SpdMatrix& p);

/// Matrix exponential of a symmetric matrix: U diag(e^lambda) U^T.
/// Throws NumericalError if an eigenvalue would overflow the exponential.
SpdMatrix sym_exp(const SymMatrix& s);

/// Lower-triangular Cholesky factor L with L L^T = P.
Eigen::MatrixXd cholesky(const SpdMatrix& p);

/// Row-major upper-triangle embedding with sqrt(2)-weighted off-diagonals.
SymVec vec(const SymMatrix& s);

/// Inverse of vec().
SymMatrix unvec(const SymVec& v);

/// The commutative group product P1 (.) P2 = exp(log P1 + log P2).
SpdMatrix lie_product(const SpdMatrix& p1, const SpdMatrix& p2);

}  // namespace spdml

#endif  // SPDML_LINALG_HPP_
