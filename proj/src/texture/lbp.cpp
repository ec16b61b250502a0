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
#include <numbers>

#include "glandseg/texture.hpp"

namespace glandseg {
namespace {

struct SamplePoint {
  // Integer part and fractional part of the (row, col) offset from the center.
  Index row0;
  Index col0;
  double fy;
  double fx;
};

// Snaps values that differ from an integer only by trigonometric round-off.
double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

std::vector<SamplePoint> sample_points(double radius, const LbpOptions& options) {
  std::vector<SamplePoint> points;
  if (options.sampling == LbpSampling::Square) {
    if (options.neighbors != 8) throw InvalidArgument("compute_lbp: square sampling requires 8 neighbors");
    if (radius != std::floor(radius)) throw InvalidArgument("compute_lbp: square sampling requires an integer radius");
    const auto r = static_cast<Index>(radius);
    // E, NE, N, NW, W, SW, S, SE as (dRow, dCol).
    const Index ring[8][2] = {{0, r}, {-r, r}, {-r, 0}, {-r, -r}, {0, -r}, {r, -r}, {r, 0}, {r, r}};
    for (const auto& p : ring) points.push_back({p[0], p[1], 0.0, 0.0});
    return points;
  }
  for (int k = 0; k < options.neighbors; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / options.neighbors;
    // Counter-clockwise in image coordinates means up (negative rows) first.
    const double dy = snap(-radius * std::sin(angle));
    const double dx = snap(radius * std::cos(angle));
    const double y0 = std::floor(dy);
    const double x0 = std::floor(dx);
    points.push_back({static_cast<Index>(y0), static_cast<Index>(x0), dy - y0, dx - x0});
  }
  return points;
}

}  // namespace

int lbp_margin(double radius) { return static_cast<int>(std::ceil(radius)); }

LbpMap compute_lbp(const GrayRaster& image, double radius, LbpOptions options) {
  if (!(radius > 0)) throw InvalidArgument("compute_lbp: radius must be positive");
  if (options.neighbors < 1 || options.neighbors > 32)
    throw InvalidArgument("compute_lbp: neighbors must be in [1, 32]");
  const int margin = lbp_margin(radius);
  const Index rows = image.rows();
  const Index cols = image.cols();
  if (rows - 2 * margin < 1 || cols - 2 * margin < 1)
    throw DegenerateInput("compute_lbp: image too small for radius " + std::to_string(radius));

  const auto points = sample_points(radius, options);

  LbpMap map;
  map.width = cols;
  map.height = rows;
  map.radius = radius;
  map.neighbors = options.neighbors;
  map.borderMargin = margin;
  map.codes = Raster<std::uint32_t>::Zero(rows, cols);

  // Interpolate differences to the center rather than raw values, so that adding
  // a constant to the image leaves every comparison bit-identical.
  for (Index r = margin; r < rows - margin; ++r) {
    for (Index c = margin; c < cols - margin; ++c) {
      const double center = image(r, c);
      std::uint32_t code = 0;
      for (std::size_t k = 0; k < points.size(); ++k) {
        const SamplePoint& p = points[k];
        const Index y = r + p.row0;
        const Index x = c + p.col0;
        const Index y1 = p.fy > 0 ? y + 1 : y;
        const Index x1 = p.fx > 0 ? x + 1 : x;
        const double d00 = image(y, x) - center;
        const double d01 = image(y, x1) - center;
        const double d10 = image(y1, x) - center;
        const double d11 = image(y1, x1) - center;
        const double top = d00 + p.fx * (d01 - d00);
        const double bottom = d10 + p.fx * (d11 - d10);
        const double delta = top + p.fy * (bottom - top);
        if (delta >= 0) code |= (1u << k);
      }
      map.codes(r, c) = code;
    }
  }
  return map;
}

}  // namespace glandseg
