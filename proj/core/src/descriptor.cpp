// core/src/descriptor.cpp

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

#include "spdml/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdml/errors.hpp"

namespace spdml {

ImageBuffer::ImageBuffer(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ < 1 || height_ < 1) {
    std::ostringstream msg;
    msg << "ImageBuffer: dimensions must be positive, got " << width_ << "x"
        << height_;
    throw ShapeError(msg.str());
  }
  const std::size_t count =
      static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  if (count < kMinImagePixels) {
    std::ostringstream msg;
    msg << "ImageBuffer: " << width_ << "x" << height_ << " has " << count
        << " pixels, need at least " << kMinImagePixels;
    throw ShapeError(msg.str());
  }
  if (pixels_.size() != 3 * count) {
    std::ostringstream msg;
    msg << "ImageBuffer: expected " << 3 * count << " channel values for "
        << width_ << "x" << height_ << ", got " << pixels_.size();
    throw ShapeError(msg.str());
  }
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "ImageBuffer: channel value " << v << " outside [0, 1]";
      throw NumericalError(msg.str());
    }
  }
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int new_width,
                            int new_height) {
  if (new_width < 1 || new_height < 1) {
    std::ostringstream msg;
    msg << "resize_bilinear: target dimensions must be positive, got "
        << new_width << "x" << new_height;
    throw ShapeError(msg.str());
  }
  const double sx = static_cast<double>(img.width()) / new_width;
  const double sy = static_cast<double>(img.height()) / new_height;
  std::vector<double> out(3 * static_cast<std::size_t>(new_width) * new_height);
  std::size_t at = 0;
  for (int y = 0; y < new_height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0,
                                 static_cast<double>(img.height() - 1));
    const int y0 = static_cast<int>(std::floor(fy));
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wy1 = fy - y0;
    const double wy0 = 1.0 - wy1;
    for (int x = 0; x < new_width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0,
                                   static_cast<double>(img.width() - 1));
      const int x0 = static_cast<int>(std::floor(fx));
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double wx1 = fx - x0;
      const double wx0 = 1.0 - wx1;
      const double c00 = wy0 * wx0;
      const double c01 = wy0 * wx1;
      const double c10 = wy1 * wx0;
      const double c11 = wy1 * wx1;
      out[at++] = std::clamp(c00 * img.r(x0, y0) + c01 * img.r(x1, y0) +
                                 c10 * img.r(x0, y1) + c11 * img.r(x1, y1),
                             0.0, 1.0);
      out[at++] = std::clamp(c00 * img.g(x0, y0) + c01 * img.g(x1, y0) +
                                 c10 * img.g(x0, y1) + c11 * img.g(x1, y1),
                             0.0, 1.0);
      out[at++] = std::clamp(c00 * img.b(x0, y0) + c01 * img.b(x1, y0) +
                                 c10 * img.b(x0, y1) + c11 * img.b(x1, y1),
                             0.0, 1.0);
    }
  }
  return ImageBuffer(new_width, new_height, std::move(out));
}

Eigen::MatrixXd pixel_features(const ImageBuffer& img) {
  const int w = img.width();
  const int h = img.height();
  Eigen::MatrixXd gray(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      gray(y, x) = img.gray(x, y);
    }
  }
  auto clampx = [w](int x) { return std::clamp(x, 0, w - 1); };
  auto clampy = [h](int y) { return std::clamp(y, 0, h - 1); };

  Eigen::MatrixXd features(static_cast<Eigen::Index>(w) * h,
                           kDescriptorFeatures);
  Eigen::Index row = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x, ++row) {
      const double left = gray(y, clampx(x - 1));
      const double right = gray(y, clampx(x + 1));
      const double up = gray(clampy(y - 1), x);
      const double down = gray(clampy(y + 1), x);
      const double center = gray(y, x);
      features(row, 0) = x;
      features(row, 1) = y;
      features(row, 2) = img.r(x, y);
      features(row, 3) = img.g(x, y);
      features(row, 4) = img.b(x, y);
      features(row, 5) = std::abs(0.5 * (right - left));
      features(row, 6) = std::abs(0.5 * (down - up));
      features(row, 7) = std::abs(right - 2.0 * center + left);
      features(row, 8) = std::abs(down - 2.0 * center + up);
    }
  }
  return features;
}

SpdMatrix region_covariance(const Eigen::MatrixXd& features,
                            const DescriptorConfig& config) {
  if (config.epsilon_scale < 0.0) {
    std::ostringstream msg;
    msg << "region_covariance: epsilon_scale must be nonnegative, got "
        << config.epsilon_scale;
    throw ConfigError(msg.str());
  }
  const Eigen::Index count = features.rows();
  const Eigen::Index dim = features.cols();
  if (count < 2) {
    std::ostringstream msg;
    msg << "region_covariance: need at least 2 feature vectors, got " << count;
    throw InsufficientDataError(msg.str());
  }
  if (dim < 1) {
    throw ShapeError("region_covariance: feature vectors are empty");
  }
  const Eigen::RowVectorXd mean = features.colwise().mean();
  const Eigen::MatrixXd centered = features.rowwise() - mean;
  const double divisor =
      config.unbiased ? static_cast<double>(count - 1)
                      : static_cast<double>(count);
  Eigen::MatrixXd cov = (centered.transpose() * centered) / divisor;
  const double eps =
      config.epsilon_scale * std::max(cov.trace() / static_cast<double>(dim),
                                      1.0);
  cov.diagonal().array() += eps;
  return SpdMatrix(SymMatrix(std::move(cov)));
}

SpdMatrix extract(const ImageBuffer& img, const DescriptorConfig& config) {
  if (config.resize_to) {
    const auto [rw, rh] = *config.resize_to;
    if (rw < 1 || rh < 1 ||
        static_cast<long>(rw) * rh < kMinImagePixels) {
      std::ostringstream msg;
      msg << "extract: resize target " << rw << "x" << rh
          << " is not a valid descriptor image size";
      throw ConfigError(msg.str());
    }
    if (rw != img.width() || rh != img.height()) {
      return region_covariance(pixel_features(resize_bilinear(img, rw, rh)),
                               config);
    }
  }
  return region_covariance(pixel_features(img), config);
}

}  // namespace spdml
