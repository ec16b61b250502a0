// Copyright 2026 The glandseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLANDSEG_IMAGE_HPP
#define GLANDSEG_IMAGE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "glandseg/error.hpp"

namespace glandseg {

using Eigen::Index;

/// Row-major raster: rows() is the image height, cols() the width.
template <typename Scalar>
using Raster = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit single-channel image.
using GrayRaster = Raster<std::uint8_t>;

/// 8-bit interleaved RGB image.
struct RgbImage {
  Index width = 0;
  Index height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(Index w, Index h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w * h * 3), fill) {
    if (w < 1 || h < 1) throw InvalidArgument("RgbImage: dimensions must be positive");
  }

  std::uint8_t& at(Index row, Index col, int channel) {
    return pixels[static_cast<std::size_t>((row * width + col) * 3 + channel)];
  }
  std::uint8_t at(Index row, Index col, int channel) const {
    return pixels[static_cast<std::size_t>((row * width + col) * 3 + channel)];
  }

  bool empty() const { return pixels.empty(); }
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Quantized gray-level image: every value lies in [0, levels).
class GrayImage {
 public:
  GrayImage(GrayRaster values, int levels) : values_(std::move(values)), levels_(levels) {
    if (levels_ < 2 || levels_ > 256) throw InvalidArgument("GrayImage: levels must be in [2, 256]");
    if (values_.size() == 0) throw InvalidArgument("GrayImage: empty raster");
    if (static_cast<int>(values_.maxCoeff()) >= levels_)
      throw InvalidArgument("GrayImage: value exceeds level count");
  }

  const GrayRaster& values() const { return values_; }
  int levels() const { return levels_; }
  Index width() const { return values_.cols(); }
  Index height() const { return values_.rows(); }

 private:
  GrayRaster values_;
  int levels_;
};

enum class Label : std::uint8_t { Ignore = 0, Gland = 1, Stroma = 2 };

inline constexpr int kLabelCount = 3;

/// Per-pixel class map over {ignore, gland, stroma}.
class LabelMask {
 public:
  LabelMask() = default;
  LabelMask(Index width, Index height, Label fill = Label::Ignore)
      : labels_(GrayRaster::Constant(height, width, static_cast<std::uint8_t>(fill))) {
    if (width < 1 || height < 1) throw InvalidArgument("LabelMask: dimensions must be positive");
  }
  explicit LabelMask(GrayRaster labels) : labels_(std::move(labels)) {
    if (labels_.size() == 0) throw InvalidArgument("LabelMask: empty raster");
    if (labels_.maxCoeff() >= kLabelCount)
      throw DataError("LabelMask: label value out of vocabulary {0,1,2}");
  }

  Index width() const { return labels_.cols(); }
  Index height() const { return labels_.rows(); }
  Label operator()(Index row, Index col) const { return static_cast<Label>(labels_(row, col)); }
  void set(Index row, Index col, Label label) { labels_(row, col) = static_cast<std::uint8_t>(label); }
  const GrayRaster& raw() const { return labels_; }

  friend bool operator==(const LabelMask& a, const LabelMask& b) {
    return a.labels_.rows() == b.labels_.rows() && a.labels_.cols() == b.labels_.cols() &&
           a.labels_ == b.labels_;
  }

 private:
  GrayRaster labels_;
};

}  // namespace glandseg

#endif  // GLANDSEG_IMAGE_HPP
