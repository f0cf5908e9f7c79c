// tests/test_linalg.cpp

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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spdml/errors.hpp"
#include "spdml/linalg.hpp"
#include "spdml/random.hpp"
#include "spdml/types.hpp"
#include "test_util.hpp"

namespace {

using namespace spdml;
using spdml_test::random_spd;
using spdml_test::random_sym;

TEST(SymMatrixTest, SymmetrizesInput) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 4.0, 3.0;
  const SymMatrix s(a);
  EXPECT_DOUBLE_EQ(s(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
}

TEST(SymMatrixTest, RejectsNonSquare) {
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd(0, 0)), ShapeError);
}

TEST(SymMatrixTest, RejectsNonFinite) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SymMatrix{a}, NumericalError);
  a(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SymMatrix{a}, NumericalError);
}

TEST(SymMatrixTest, ArithmeticRespectsOrder) {
  const SymMatrix a(Eigen::MatrixXd::Identity(2, 2));
  const SymMatrix b(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_THROW(a + b, ShapeError);
  EXPECT_THROW(a - b, ShapeError);
  EXPECT_DOUBLE_EQ(a.scaled(3.0)(1, 1), 3.0);
}

TEST(SymVecDimTest, TriangleNumbers) {
  EXPECT_EQ(sym_vec_dim(1), 1);
  EXPECT_EQ(sym_vec_dim(2), 3);
  EXPECT_EQ(sym_vec_dim(3), 6);
  EXPECT_EQ(sym_vec_dim(9), 45);
}

TEST(SpdMatrixTest, AdmissionIsRelative) {
  Eigen::VectorXd d(2);
  d << 1.0, 2e-10;
  EXPECT_NO_THROW(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())));
  d << 1.0, 1e-10;
  EXPECT_THROW(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())), NotSpdError);
  // Positive definite but too ill-conditioned for admission.
  d << 1e12, 1e-2;
  EXPECT_THROW(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())), NotSpdError);
}

TEST(SpdMatrixTest, RejectsIndefinite) {
  Eigen::VectorXd d(2);
  d << 1.0, -1.0;
  EXPECT_THROW(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())), NotSpdError);
  EXPECT_FALSE(
      SpdMatrix::passes_admission(SymMatrix(Eigen::MatrixXd(d.asDiagonal()))));
}

TEST(SpdMatrixTest, CachesMinEigenvalue) {
  Eigen::VectorXd d(3);
  d << 0.5, 2.0, 7.0;
  const SpdMatrix p(Eigen::MatrixXd(d.asDiagonal()));
  EXPECT_NEAR(p.min_eigenvalue(), 0.5, 1e-12);
}

TEST(VecTest, OrderingAndWeights) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 2.0, 3.0;
  const SymVec v = vec(SymMatrix(a));
  ASSERT_EQ(v.dim(), 3);
  EXPECT_DOUBLE_EQ(v.coords()(0), 1.0);
  EXPECT_DOUBLE_EQ(v.coords()(1), 2.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(v.coords()(2), 3.0);
  EXPECT_EQ(v.order(), 2);
}

TEST(VecTest, NormMatchesFrobenius) {
  std::mt19937_64 rng = make_rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix s = random_sym(5, rng);
    EXPECT_NEAR(vec(s).coords().norm(), s.frobenius_norm(), 1e-12);
  }
}

TEST(VecTest, UnvecRoundTrip) {
  std::mt19937_64 rng = make_rng(12, 0);
  for (int n : {1, 2, 3, 5, 9}) {
    const SymMatrix s = random_sym(n, rng);
    const SymMatrix back = unvec(vec(s));
    EXPECT_LT((back.mat() - s.mat()).norm(), 1e-14);
  }
}

TEST(VecTest, UnvecRejectsNonTriangularDim) {
  EXPECT_THROW(unvec(SymVec(3, Eigen::VectorXd::Zero(5))), ShapeError);
}

TEST(LogExpTest, InverseOnRandomMatrices) {
  std::mt19937_64 rng = make_rng(13, 0);
  for (int n : {2, 3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const SpdMatrix p = random_spd(n, rng);
      const SpdMatrix back = sym_exp(spd_log(p));
      EXPECT_LT((back.mat() - p.mat()).norm() / p.mat().norm(), 1e-10);
      const SymMatrix s = random_sym(n, rng);
      const SymMatrix back2 = spd_log(sym_exp(s));
      EXPECT_LT((back2.mat() - s.mat()).norm(),
                1e-10 * std::max(1.0, s.mat().norm()));
    }
  }
}

TEST(LogExpTest, ClosedFormsOnDiagonals) {
  Eigen::VectorXd d(2);
  d << std::exp(1.0), std::exp(2.0);
  const SymMatrix lg = spd_log(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())));
  EXPECT_NEAR(lg(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(lg(1, 1), 2.0, 1e-12);
  EXPECT_NEAR(lg(0, 1), 0.0, 1e-12);

  const SymMatrix zero(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_LT((sym_exp(zero).mat() - Eigen::MatrixXd::Identity(3, 3)).norm(),
            1e-14);
  const SpdMatrix id(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_LT(spd_log(id).frobenius_norm(), 1e-14);
}

TEST(LogExpTest, ExpOverflowThrows) {
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(2, 2) * 1000.0;
  EXPECT_THROW(sym_exp(SymMatrix(big)), NumericalError);
}

TEST(CholeskyTest, FactorsAndShape) {
  std::mt19937_64 rng = make_rng(14, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix p = random_spd(4, rng);
    const Eigen::MatrixXd l = cholesky(p);
    EXPECT_LT((l * l.transpose() - p.mat()).norm() / p.mat().norm(), 1e-12);
    for (int i = 0; i < 4; ++i) {
      EXPECT_GT(l(i, i), 0.0);
      for (int j = i + 1; j < 4; ++j) {
        EXPECT_DOUBLE_EQ(l(i, j), 0.0);
      }
    }
  }
}

TEST(CholeskyTest, DiagonalClosedForm) {
  Eigen::VectorXd d(2);
  d << 4.0, 9.0;
  const Eigen::MatrixXd l = cholesky(SpdMatrix(Eigen::MatrixXd(d.asDiagonal())));
  EXPECT_NEAR(l(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(l(1, 1), 3.0, 1e-14);
}

TEST(LieProductTest, CommutesAndHasIdentity) {
  std::mt19937_64 rng = make_rng(15, 0);
  const SpdMatrix id(Eigen::MatrixXd::Identity(3, 3));
  for (int trial = 0; trial < 10; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    const SpdMatrix ab = lie_product(p1, p2);
    const SpdMatrix ba = lie_product(p2, p1);
    EXPECT_LT((ab.mat() - ba.mat()).norm() / ab.mat().norm(), 1e-10);
    const SpdMatrix pe = lie_product(p1, id);
    EXPECT_LT((pe.mat() - p1.mat()).norm() / p1.mat().norm(), 1e-10);
  }
}

TEST(LieProductTest, DiagonalMultiplies) {
  Eigen::VectorXd d1(2), d2(2);
  d1 << 2.0, 3.0;
  d2 << 5.0, 7.0;
  const SpdMatrix prod = lie_product(SpdMatrix(Eigen::MatrixXd(d1.asDiagonal())),
                                     SpdMatrix(Eigen::MatrixXd(d2.asDiagonal())));
  EXPECT_NEAR(prod.mat()(0, 0), 10.0, 1e-10);
  EXPECT_NEAR(prod.mat()(1, 1), 21.0, 1e-10);
  EXPECT_NEAR(prod.mat()(0, 1), 0.0, 1e-10);
}

TEST(SymEigTest, AscendingOrthonormalReconstruction) {
  std::mt19937_64 rng = make_rng(16, 0);
  const SymMatrix s = random_sym(6, rng);
  const EigDecomp eig = sym_eig(s);
  for (int i = 1; i < 6; ++i) {
    EXPECT_LE(eig.eigenvalues(i - 1), eig.eigenvalues(i));
  }
  EXPECT_LT((eig.eigenvectors * eig.eigenvectors.transpose() -
             Eigen::MatrixXd::Identity(6, 6))
                .norm(),
            1e-12);
  const Eigen::MatrixXd back = eig.eigenvectors *
                               eig.eigenvalues.asDiagonal() *
                               eig.eigenvectors.transpose();
  EXPECT_LT((back - s.mat()).norm(), 1e-12 * std::max(1.0, s.mat().norm()));
}

TEST(RandomTest, SeedStreamsAreStable) {
  // Pinned draws: the evaluation protocols depend on these exact streams.
  EXPECT_EQ(mix_seed(0, 0), mix_seed(0, 0));
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
  EXPECT_NE(mix_seed(0, 0), mix_seed(1, 0));
  std::mt19937_64 a = make_rng(99, 3);
  std::mt19937_64 b = make_rng(99, 3);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(a(), b());
  }
}

TEST(RandomTest, HelpersLandInRange) {
  std::mt19937_64 rng = make_rng(7, 7);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = uniform_below(rng, 17);
    EXPECT_LT(v, 17u);
    const double u = uniform_real(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  double mean = 0.0;
  double sq = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const double g = gaussian(rng);
    mean += g;
    sq += g * g;
  }
  mean /= draws;
  sq /= draws;
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(sq, 1.0, 0.05);
}

TEST(RandomTest, ShuffleIsSeededPermutation) {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  std::mt19937_64 rng1 = make_rng(5, 1);
  std::mt19937_64 rng2 = make_rng(5, 1);
  std::vector<int> a = v;
  std::vector<int> b = v;
  shuffle_inplace(a, rng1);
  shuffle_inplace(b, rng2);
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, v);
}

}  // namespace
