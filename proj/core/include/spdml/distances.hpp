// core/include/spdml/distances.hpp

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

#ifndef SPDML_DISTANCES_HPP_
#define SPDML_DISTANCES_HPP_

#include <optional>
#include <span>
#include <string_view>

#include "spdml/types.hpp"

namespace spdml {

/// The six classical SPD matrix distances.
enum class DistanceKind {
  kFrobenius,          // ||P1 - P2||_F
  kCholeskyFrobenius,  // ||Chol(P1) - Chol(P2)||_F
  kJDivergence,        // 1/2 sqrt(tr(P1 P2^-1 + P2 P1^-1) - 2n)
  kJbld,               // sqrt(logdet((P1+P2)/2) - 1/2 logdet(P1 P2))
  kAffineInvariant,    // ||log(P1^-1/2 P2 P1^-1/2)||_F
  kLogFrobenius,       // ||log P1 - log P2||_F
};

/// Which metric and invariance properties a distance kind carries.
struct DistanceProperties {
  bool symmetric;
  bool triangle_inequality;
  bool geodesic;
  bool affine_invariant;
  bool scale_invariant;
  bool rotation_invariant;
  bool inversion_invariant;
};

DistanceProperties properties(DistanceKind kind);

/// Canonical name, e.g. "log-frobenius". These strings are the CLI vocabulary.
std::string_view name(DistanceKind kind);

std::optional<DistanceKind> parse_distance_kind(std::string_view name);

std::span<const DistanceKind> all_distance_kinds();

/// Evaluates one of the six distances. Orders must match.
double distance(DistanceKind kind, const SpdMatrix& p1, const SpdMatrix& p2);

}  // namespace spdml

#endif  // SPDML_DISTANCES_HPP_
