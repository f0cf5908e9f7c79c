// core/include/spdml/random.hpp

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

#ifndef SPDML_RANDOM_HPP_
#define SPDML_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace spdml {

/// Derives a per-task seed from a master seed and a stream index
/// (splitmix64 finalizer). Folds, restarts and repeats each draw their own
/// stream so results merge deterministically regardless of execution order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t stream = 0) {
  return std::mt19937_64(mix_seed(master, stream));
}

// The draw helpers below are pinned implementations rather than the <random>
// distribution classes because the standard leaves distribution algorithms
// implementation-defined; outputs must reproduce bit-for-bit across
// toolchains.

/// Unbiased uniform draw from [0, bound) by rejection. bound must be > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform draw from [0, 1) with 53 random mantissa bits.
inline double uniform_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

/// Standard normal draw (Box-Muller, one value per call, no cached state).
inline double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform_real(rng);
  const double u2 = uniform_real(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle_inplace(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

}  // namespace spdml

#endif  // SPDML_RANDOM_HPP_
