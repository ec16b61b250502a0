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

#ifndef GLANDSEG_IO_PREPARATION_HPP
#define GLANDSEG_IO_PREPARATION_HPP

#include <vector>

#include "glandseg/image.hpp"

namespace glandseg::io {

/// Luma round(0.299 R + 0.587 G + 0.114 B), computed in integer arithmetic.
GrayRaster to_grayscale(const RgbImage& rgb);

/// A pixel is tissue when its darkest channel is below this value.
inline constexpr int kTissueThreshold = 220;

/// Fraction of pixels whose minimum channel is below kTissueThreshold.
double tissue_fraction(const RgbImage& patch);

struct SlidePatch {
  RgbImage image;
  Index x = 0;
  Index y = 0;
};

/// Non-overlapping patchSize tiles anchored at the slide origin, restricted to
/// tiles that intersect the bounding box of tissue pixels and carry at least
/// `minTissue` tissue. Row-major order.
std::vector<SlidePatch> extract_patches(const RgbImage& slide, Index patchSize = 1024, double minTissue = 0.05);

RgbImage crop(const RgbImage& image, Index x, Index y, Index width, Index height);

/// Bilinear resampling with pixel-center alignment and round-half-up output.
RgbImage resize(const RgbImage& image, Index width, Index height);
GrayRaster resize(const GrayRaster& image, Index width, Index height);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_PREPARATION_HPP
