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

#include <cmath>

#include "glandseg/segmentation.hpp"

namespace glandseg {

RgbImage render_overlay(const RgbImage& image, const LabelMask& mask, double alpha) {
  if (image.width != mask.width() || image.height != mask.height())
    throw DimensionMismatch("render_overlay: image and mask dimensions differ");
  if (!(alpha >= 0 && alpha <= 1)) throw InvalidArgument("render_overlay: alpha must be in [0, 1]");

  const int a = static_cast<int>(std::floor(alpha * 255.0 + 0.5));
  RgbImage out = image;
  for (Index r = 0; r < image.height; ++r) {
    for (Index c = 0; c < image.width; ++c) {
      const Label label = mask(r, c);
      if (label == Label::Ignore) continue;
      const Rgb color = label == Label::Gland ? kGlandColor : kStromaColor;
      const int target[3] = {color.r, color.g, color.b};
      for (int ch = 0; ch < 3; ++ch) {
        const int in = image.at(r, c, ch);
        out.at(r, c, ch) = static_cast<std::uint8_t>((in * (255 - a) + target[ch] * a + 127) / 255);
      }
    }
  }
  return out;
}

}  // namespace glandseg
