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

#ifndef GLANDSEG_SEGMENTATION_HPP
#define GLANDSEG_SEGMENTATION_HPP

#include <cstddef>
#include <optional>

#include "glandseg/image.hpp"
#include "glandseg/ml.hpp"
#include "glandseg/texture.hpp"

namespace glandseg {

struct SegmentationConfig {
  /// Odd side length of the square window centered on each classified pixel.
  int windowSize = 35;
  int stride = 1;
  /// Row bands processed concurrently; 1 runs on the calling thread.
  int workers = 1;
  /// When set, must equal the model's feature config.
  std::optional<FeatureConfig> featureConfig;

  void validate() const;
};

struct SegmentationStats {
  std::size_t windowsEvaluated = 0;
};

/// Symmetric (edge-repeating) mirror padding by `pad` pixels on every side.
/// Folds repeatedly when `pad` exceeds the image size.
GrayRaster mirror_pad(const GrayRaster& image, Index pad);

/// Classifies every stride-grid pixel from the features of the window centered
/// on it in the mirror-padded image; with stride > 1 the label fills the
/// stride x stride block anchored at that pixel. The output is independent of
/// the worker count.
LabelMask segment_image(const GrayRaster& image, const ClassifierModel& model,
                        const SegmentationConfig& config, SegmentationStats* stats = nullptr);

struct Rgb {
  std::uint8_t r, g, b;
};

inline constexpr Rgb kGlandColor{128, 128, 128};
inline constexpr Rgb kStromaColor{255, 192, 203};

/// Blends gland pixels toward gray and stroma toward pink in 8-bit fixed point:
/// a = round(alpha * 255), out = round((in * (255 - a) + color * a) / 255).
/// Ignore pixels are copied unchanged.
RgbImage render_overlay(const RgbImage& image, const LabelMask& mask, double alpha);

}  // namespace glandseg

#endif  // GLANDSEG_SEGMENTATION_HPP
