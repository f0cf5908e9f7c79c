// core/include/spdml/descriptor.hpp

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

#ifndef SPDML_DESCRIPTOR_HPP_
#define SPDML_DESCRIPTOR_HPP_

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "spdml/types.hpp"

namespace spdml {

/// Number of per-pixel features used by the covariance descriptor:
/// [x, y, R, G, B, |dW/dx|, |dW/dy|, |d2W/dx2|, |d2W/dy2|].
constexpr int kDescriptorFeatures = 9;

/// Minimum number of pixels required of a descriptor input image.
constexpr int kMinImagePixels = 16;

/// An RGB raster with channel values in [0, 1], stored as row-major
/// (R, G, B) triples. Must hold at least kMinImagePixels pixels.
class ImageBuffer {
 public:
  ImageBuffer(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<double>& pixels() const { return pixels_; }

  double r(int x, int y) const { return pixels_[3 * index(x, y)]; }
  double g(int x, int y) const { return pixels_[3 * index(x, y) + 1]; }
  double b(int x, int y) const { return pixels_[3 * index(x, y) + 2]; }

  /// ITU-R BT.601 luma: 0.299 R + 0.587 G + 0.114 B.
  double gray(int x, int y) const {
    const std::size_t base = 3 * index(x, y);
    return 0.299 * pixels_[base] + 0.587 * pixels_[base + 1] +
           0.114 * pixels_[base + 2];
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<double> pixels_;
};

struct DescriptorConfig {
  /// Target (width, height) of a bilinear resize before feature extraction.
  /// Empty means no resizing.
  std::optional<std::pair<int, int>> resize_to;
  /// Scale of the eps * I regularizer added to the raw covariance, with
  /// eps = epsilon_scale * max(trace / dim, 1). Must be nonnegative.
  double epsilon_scale = 1e-6;
  /// Use the N - 1 covariance divisor instead of N.
  bool unbiased = true;
};

/// Resamples an image to new dimensions with bilinear interpolation and the
/// half-pixel center convention.
ImageBuffer resize_bilinear(const ImageBuffer& img, int new_width,
                            int new_height);

/// One feature row per pixel in row-major pixel order, width * height rows by
/// kDescriptorFeatures columns. Coordinates are raw 0-based pixel indices;
/// derivatives of the grayscale image use central-difference and [1, -2, 1]
/// stencils with replicate padding, taken in absolute value.
Eigen::MatrixXd pixel_features(const ImageBuffer& img);

/// Sample covariance of the feature rows plus the eps * I regularizer.
/// Requires at least two rows.
SpdMatrix region_covariance(const Eigen::MatrixXd& features,
                            const DescriptorConfig& config);

/// Full descriptor pipeline: optional resize, then pixel_features, then
/// region_covariance. The result is a kDescriptorFeatures-order SpdMatrix.
SpdMatrix extract(const ImageBuffer& img, const DescriptorConfig& config);

}  // namespace spdml

#endif  // SPDML_DESCRIPTOR_HPP_
