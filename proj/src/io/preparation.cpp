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

#include <algorithm>
#include <cmath>

#include "glandseg/io/preparation.hpp"

namespace glandseg::io {
namespace {

bool is_tissue(const RgbImage& image, Index row, Index col) {
  return std::min({image.at(row, col, 0), image.at(row, col, 1), image.at(row, col, 2)}) < kTissueThreshold;
}

struct Tap {
  Index lo;
  Index hi;
  double t;
};

// Pixel-center aligned source coordinate for each destination index.
std::vector<Tap> taps(Index src, Index dst) {
  std::vector<Tap> out(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / static_cast<double>(dst);
  for (Index i = 0; i < dst; ++i) {
    const double x = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
    const auto lo = static_cast<Index>(std::floor(x));
    out[static_cast<std::size_t>(i)] = {lo, std::min(lo + 1, src - 1), x - static_cast<double>(lo)};
  }
  return out;
}

// Resamples an interleaved 8-bit buffer with `channels` channels.
void resize_interleaved(const std::uint8_t* src, Index srcW, Index srcH, std::uint8_t* dst, Index dstW, Index dstH,
                        int channels) {
  const auto xs = taps(srcW, dstW);
  const auto ys = taps(srcH, dstH);
  const auto at = [&](Index r, Index c, int ch) -> double { return src[(r * srcW + c) * channels + ch]; };
  for (Index r = 0; r < dstH; ++r) {
    const Tap& y = ys[static_cast<std::size_t>(r)];
    for (Index c = 0; c < dstW; ++c) {
      const Tap& x = xs[static_cast<std::size_t>(c)];
      for (int ch = 0; ch < channels; ++ch) {
        const double top = at(y.lo, x.lo, ch) + x.t * (at(y.lo, x.hi, ch) - at(y.lo, x.lo, ch));
        const double bottom = at(y.hi, x.lo, ch) + x.t * (at(y.hi, x.hi, ch) - at(y.hi, x.lo, ch));
        const double v = top + y.t * (bottom - top);
        dst[(r * dstW + c) * channels + ch] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
}

}  // namespace

GrayRaster to_grayscale(const RgbImage& rgb) {
  GrayRaster out(rgb.height, rgb.width);
  for (Index r = 0; r < rgb.height; ++r)
    for (Index c = 0; c < rgb.width; ++c)
      out(r, c) = static_cast<std::uint8_t>(
          (299 * rgb.at(r, c, 0) + 587 * rgb.at(r, c, 1) + 114 * rgb.at(r, c, 2) + 500) / 1000);
  return out;
}

double tissue_fraction(const RgbImage& patch) {
  if (patch.width < 1 || patch.height < 1) throw InvalidArgument("tissue_fraction: empty patch");
  Index tissue = 0;
  for (Index r = 0; r < patch.height; ++r)
    for (Index c = 0; c < patch.width; ++c) tissue += is_tissue(patch, r, c) ? 1 : 0;
  return static_cast<double>(tissue) / static_cast<double>(patch.width * patch.height);
}

RgbImage crop(const RgbImage& image, Index x, Index y, Index width, Index height) {
  if (x < 0 || y < 0 || width < 1 || height < 1 || x + width > image.width || y + height > image.height)
    throw InvalidArgument("crop: region outside the image");
  RgbImage out(width, height);
  for (Index r = 0; r < height; ++r)
    std::copy_n(&image.pixels[static_cast<std::size_t>(((y + r) * image.width + x) * 3)], width * 3,
                &out.pixels[static_cast<std::size_t>(r * width * 3)]);
  return out;
}

std::vector<SlidePatch> extract_patches(const RgbImage& slide, Index patchSize, double minTissue) {
  if (patchSize < 1) throw InvalidArgument("extract_patches: patch size must be positive");
  if (slide.width < patchSize || slide.height < patchSize)
    throw InvalidArgument("extract_patches: slide " + std::to_string(slide.width) + "x" +
                          std::to_string(slide.height) + " is smaller than the patch size " +
                          std::to_string(patchSize));

  Index minX = slide.width, minY = slide.height, maxX = -1, maxY = -1;
  for (Index r = 0; r < slide.height; ++r) {
    for (Index c = 0; c < slide.width; ++c) {
      if (!is_tissue(slide, r, c)) continue;
      minX = std::min(minX, c);
      maxX = std::max(maxX, c);
      minY = std::min(minY, r);
      maxY = std::max(maxY, r);
    }
  }
  std::vector<SlidePatch> patches;
  if (maxX < 0) return patches;

  for (Index y = 0; y + patchSize <= slide.height; y += patchSize) {
    if (y > maxY || y + patchSize <= minY) continue;
    for (Index x = 0; x + patchSize <= slide.width; x += patchSize) {
      if (x > maxX || x + patchSize <= minX) continue;
      RgbImage patch = crop(slide, x, y, patchSize, patchSize);
      if (tissue_fraction(patch) < minTissue) continue;
      patches.push_back({std::move(patch), x, y});
    }
  }
  return patches;
}

RgbImage resize(const RgbImage& image, Index width, Index height) {
  if (width < 1 || height < 1) throw InvalidArgument("resize: target dimensions must be positive");
  if (width == image.width && height == image.height) return image;
  RgbImage out(width, height);
  resize_interleaved(image.pixels.data(), image.width, image.height, out.pixels.data(), width, height, 3);
  return out;
}

GrayRaster resize(const GrayRaster& image, Index width, Index height) {
  if (width < 1 || height < 1) throw InvalidArgument("resize: target dimensions must be positive");
  if (width == image.cols() && height == image.rows()) return image;
  GrayRaster out(height, width);
  resize_interleaved(image.data(), image.cols(), image.rows(), out.data(), width, height, 1);
  return out;
}

}  // namespace glandseg::io
