// tests/test_distances.cpp

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
#include <cmath>

#include "spdml/distances.hpp"
#include "spdml/errors.hpp"
#include "spdml/random.hpp"
#include "test_util.hpp"

namespace {

using namespace spdml;
using spdml_test::random_invertible;
using spdml_test::random_rotation;
using spdml_test::random_spd;

SpdMatrix diag2(double a, double b) {
  Eigen::VectorXd d(2);
  d << a, b;
  return SpdMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

SpdMatrix congruent(const SpdMatrix& p, const Eigen::MatrixXd& a) {
  return SpdMatrix(a * p.mat() * a.transpose());
}

SpdMatrix inverse_of(const SpdMatrix& p) {
  return SpdMatrix(p.mat().inverse());
}

TEST(DistanceNamesTest, RoundTripAllSix) {
  ASSERT_EQ(all_distance_kinds().size(), 6u);
  for (DistanceKind kind : all_distance_kinds()) {
    const auto parsed = parse_distance_kind(name(kind));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, kind);
  }
  EXPECT_FALSE(parse_distance_kind("euclidean").has_value());
  EXPECT_FALSE(parse_distance_kind("").has_value());
}

TEST(DistancePropertiesTest, PropertyTable) {
  const DistanceProperties f = properties(DistanceKind::kFrobenius);
  EXPECT_TRUE(f.symmetric);
  EXPECT_TRUE(f.triangle_inequality);
  EXPECT_FALSE(f.geodesic);
  EXPECT_FALSE(f.affine_invariant);
  EXPECT_FALSE(f.scale_invariant);
  EXPECT_TRUE(f.rotation_invariant);
  EXPECT_FALSE(f.inversion_invariant);

  const DistanceProperties c = properties(DistanceKind::kCholeskyFrobenius);
  EXPECT_TRUE(c.symmetric);
  EXPECT_TRUE(c.triangle_inequality);
  EXPECT_FALSE(c.geodesic);
  EXPECT_FALSE(c.affine_invariant);
  EXPECT_FALSE(c.scale_invariant);
  EXPECT_FALSE(c.rotation_invariant);
  EXPECT_FALSE(c.inversion_invariant);

  const DistanceProperties j = properties(DistanceKind::kJDivergence);
  EXPECT_TRUE(j.symmetric);
  EXPECT_FALSE(j.triangle_inequality);
  EXPECT_FALSE(j.geodesic);
  EXPECT_TRUE(j.affine_invariant);
  EXPECT_TRUE(j.scale_invariant);
  EXPECT_TRUE(j.rotation_invariant);
  EXPECT_TRUE(j.inversion_invariant);

  const DistanceProperties b = properties(DistanceKind::kJbld);
  EXPECT_TRUE(b.symmetric);
  EXPECT_FALSE(b.triangle_inequality);
  EXPECT_FALSE(b.geodesic);
  EXPECT_TRUE(b.affine_invariant);
  EXPECT_TRUE(b.scale_invariant);
  EXPECT_TRUE(b.rotation_invariant);
  EXPECT_TRUE(b.inversion_invariant);

  const DistanceProperties a = properties(DistanceKind::kAffineInvariant);
  EXPECT_TRUE(a.symmetric);
  EXPECT_TRUE(a.triangle_inequality);
  EXPECT_TRUE(a.geodesic);
  EXPECT_TRUE(a.affine_invariant);
  EXPECT_TRUE(a.scale_invariant);
  EXPECT_TRUE(a.rotation_invariant);
  EXPECT_TRUE(a.inversion_invariant);

  const DistanceProperties l = properties(DistanceKind::kLogFrobenius);
  EXPECT_TRUE(l.symmetric);
  EXPECT_TRUE(l.triangle_inequality);
  EXPECT_TRUE(l.geodesic);
  EXPECT_FALSE(l.affine_invariant);
  EXPECT_TRUE(l.scale_invariant);
  EXPECT_TRUE(l.rotation_invariant);
  EXPECT_TRUE(l.inversion_invariant);
}

TEST(DistanceValuesTest, ClosedForms) {
  const SpdMatrix two_i = diag2(2.0, 2.0);
  const SpdMatrix id = diag2(1.0, 1.0);
  const double sqrt2 = std::sqrt(2.0);

  EXPECT_NEAR(distance(DistanceKind::kFrobenius, two_i, id), sqrt2, 1e-12);
  // Chol(2I) = sqrt(2) I.
  EXPECT_NEAR(distance(DistanceKind::kCholeskyFrobenius, two_i, id),
              sqrt2 * (sqrt2 - 1.0), 1e-12);
  // tr(P1 P2^-1 + P2 P1^-1) - 2n = 2*2 + 2*0.5 - 4 = 1.
  EXPECT_NEAR(distance(DistanceKind::kJDivergence, two_i, id), 0.5, 1e-12);
  // logdet(1.5 I) - 0.5 logdet(2 I) = 2 ln 1.5 - ln 2.
  EXPECT_NEAR(distance(DistanceKind::kJbld, two_i, id),
              std::sqrt(2.0 * std::log(1.5) - std::log(2.0)), 1e-12);
  EXPECT_NEAR(distance(DistanceKind::kAffineInvariant, two_i, id),
              sqrt2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(distance(DistanceKind::kLogFrobenius, two_i, id),
              sqrt2 * std::log(2.0), 1e-12);
}

TEST(DistanceValuesTest, ZeroAtEquality) {
  std::mt19937_64 rng = make_rng(21, 0);
  const SpdMatrix p = random_spd(4, rng);
  for (DistanceKind kind : all_distance_kinds()) {
    EXPECT_NEAR(distance(kind, p, p), 0.0, 1e-7) << name(kind);
  }
}

TEST(DistanceValuesTest, OrderMismatchThrows) {
  const SpdMatrix a(Eigen::MatrixXd::Identity(2, 2));
  const SpdMatrix b(Eigen::MatrixXd::Identity(3, 3));
  for (DistanceKind kind : all_distance_kinds()) {
    EXPECT_THROW(distance(kind, a, b), ShapeError) << name(kind);
  }
}

TEST(DistancePropertiesTest, SymmetryHolds) {
  std::mt19937_64 rng = make_rng(22, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    for (DistanceKind kind : all_distance_kinds()) {
      const double d12 = distance(kind, p1, p2);
      const double d21 = distance(kind, p2, p1);
      EXPECT_LT(spdml_test::rel_err(d12, d21), 1e-10) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, TriangleInequalityWhereClaimed) {
  std::mt19937_64 rng = make_rng(23, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    const SpdMatrix p3 = random_spd(3, rng);
    for (DistanceKind kind : all_distance_kinds()) {
      if (!properties(kind).triangle_inequality) {
        continue;
      }
      const double d13 = distance(kind, p1, p3);
      const double d12 = distance(kind, p1, p2);
      const double d23 = distance(kind, p2, p3);
      EXPECT_LE(d13, d12 + d23 + 1e-8 * std::max(1.0, d13)) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, AffineInvarianceWhereClaimed) {
  std::mt19937_64 rng = make_rng(24, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    const Eigen::MatrixXd a = random_invertible(3, rng);
    for (DistanceKind kind : all_distance_kinds()) {
      if (!properties(kind).affine_invariant) {
        continue;
      }
      const double base = distance(kind, p1, p2);
      const double moved = distance(kind, congruent(p1, a), congruent(p2, a));
      EXPECT_LT(spdml_test::rel_err(base, moved), 1e-8) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, RotationInvarianceWhereClaimed) {
  std::mt19937_64 rng = make_rng(25, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    const Eigen::MatrixXd q = random_rotation(3, rng);
    for (DistanceKind kind : all_distance_kinds()) {
      if (!properties(kind).rotation_invariant) {
        continue;
      }
      const double base = distance(kind, p1, p2);
      const double moved = distance(kind, congruent(p1, q), congruent(p2, q));
      EXPECT_LT(spdml_test::rel_err(base, moved), 1e-8) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, ScaleInvarianceWhereClaimed) {
  std::mt19937_64 rng = make_rng(26, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    const double s = std::exp(2.0 * uniform_real(rng) - 1.0);
    for (DistanceKind kind : all_distance_kinds()) {
      if (!properties(kind).scale_invariant) {
        continue;
      }
      const double base = distance(kind, p1, p2);
      const double moved = distance(kind, SpdMatrix(s * p1.mat()),
                                    SpdMatrix(s * p2.mat()));
      EXPECT_LT(spdml_test::rel_err(base, moved), 1e-8) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, InversionInvarianceWhereClaimed) {
  std::mt19937_64 rng = make_rng(27, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix p1 = random_spd(3, rng);
    const SpdMatrix p2 = random_spd(3, rng);
    for (DistanceKind kind : all_distance_kinds()) {
      if (!properties(kind).inversion_invariant) {
        continue;
      }
      const double base = distance(kind, p1, p2);
      const double moved = distance(kind, inverse_of(p1), inverse_of(p2));
      EXPECT_LT(spdml_test::rel_err(base, moved), 1e-8) << name(kind);
    }
  }
}

TEST(DistancePropertiesTest, FrobeniusNotScaleInvariant) {
  // Negative control: the invariance columns must not silently widen.
  const SpdMatrix p1 = diag2(1.0, 1.0);
  const SpdMatrix p2 = diag2(2.0, 2.0);
  const double base = distance(DistanceKind::kFrobenius, p1, p2);
  const double scaled = distance(DistanceKind::kFrobenius,
                                 SpdMatrix(3.0 * p1.mat()),
                                 SpdMatrix(3.0 * p2.mat()));
  EXPECT_GT(std::abs(base - scaled), 1e-6);
}

TEST(DistancePropertiesTest, JDivergenceBreaksTriangle) {
  // Known counterexample family: the triangle inequality fails for
  // j-divergence on strongly separated diagonal matrices.
  const SpdMatrix p1 = diag2(1e-3, 1e-3);
  const SpdMatrix p2 = diag2(1.0, 1.0);
  const SpdMatrix p3 = diag2(1e3, 1e3);
  const double d13 = distance(DistanceKind::kJDivergence, p1, p3);
  const double via = distance(DistanceKind::kJDivergence, p1, p2) +
                     distance(DistanceKind::kJDivergence, p2, p3);
  EXPECT_GT(d13, via);
}

}  // namespace
