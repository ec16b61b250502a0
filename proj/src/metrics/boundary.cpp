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
#include <limits>
#include <vector>

#include "glandseg/metrics.hpp"

namespace glandseg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Felzenszwalb-Huttenlocher lower envelope of parabolas, in place on `f`.
void distance_transform_1d(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                           std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  int first = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] < kInf) {
      first = q;
      break;
    }
  }
  if (first < 0) return;
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = first + 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = 0;
    while (true) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double diff = q - v[k];
    d[q] = diff * diff + f[v[k]];
  }
  f.swap(d);
}

}  // namespace

double BoundaryConfig::resolve(Index width, Index height) const {
  if (toleranceDistance >= 0) return toleranceDistance;
  return 0.0075 * std::hypot(static_cast<double>(width), static_cast<double>(height));
}

Raster<std::uint8_t> class_boundary(const LabelMask& mask, Label label) {
  const Index rows = mask.height();
  const Index cols = mask.width();
  Raster<std::uint8_t> out = Raster<std::uint8_t>::Zero(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (mask(r, c) != label) continue;
      const bool edge = (r > 0 && mask(r - 1, c) != label) || (r + 1 < rows && mask(r + 1, c) != label) ||
                        (c > 0 && mask(r, c - 1) != label) || (c + 1 < cols && mask(r, c + 1) != label);
      out(r, c) = edge ? 1 : 0;
    }
  }
  return out;
}

Raster<double> squared_distance_transform(const Raster<std::uint8_t>& points) {
  const Index rows = points.rows();
  const Index cols = points.cols();
  Raster<double> dist(rows, cols);
  for (Index i = 0; i < points.size(); ++i) dist.data()[i] = points.data()[i] ? 0.0 : kInf;

  const auto longest = static_cast<std::size_t>(std::max(rows, cols));
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);
  for (Index c = 0; c < cols; ++c) {
    f.resize(static_cast<std::size_t>(rows));
    d.resize(f.size());
    for (Index r = 0; r < rows; ++r) f[static_cast<std::size_t>(r)] = dist(r, c);
    distance_transform_1d(f, d, v, z);
    for (Index r = 0; r < rows; ++r) dist(r, c) = f[static_cast<std::size_t>(r)];
  }
  for (Index r = 0; r < rows; ++r) {
    f.resize(static_cast<std::size_t>(cols));
    d.resize(f.size());
    for (Index c = 0; c < cols; ++c) f[static_cast<std::size_t>(c)] = dist(r, c);
    distance_transform_1d(f, d, v, z);
    for (Index c = 0; c < cols; ++c) dist(r, c) = f[static_cast<std::size_t>(c)];
  }
  return dist;
}

BoundaryScore boundary_f1(const LabelMask& pred, const LabelMask& gt, Label label, const BoundaryConfig& config) {
  if (pred.width() != gt.width() || pred.height() != gt.height())
    throw DimensionMismatch("boundary_f1: prediction and ground truth dimensions differ");
  const double tolerance = config.resolve(gt.width(), gt.height());
  const double toleranceSq = tolerance * tolerance;

  const auto predBoundary = class_boundary(pred, label);
  const auto gtBoundary = class_boundary(gt, label);
  const Index predCount = predBoundary.cast<Index>().sum();
  const Index gtCount = gtBoundary.cast<Index>().sum();
  if (predCount == 0 && gtCount == 0) return {1.0, 1.0, 1.0};
  if (predCount == 0 || gtCount == 0) return {0.0, 0.0, 0.0};

  const auto toGt = squared_distance_transform(gtBoundary);
  const auto toPred = squared_distance_transform(predBoundary);
  Index predMatched = 0, gtMatched = 0;
  for (Index i = 0; i < predBoundary.size(); ++i) {
    if (predBoundary.data()[i] && toGt.data()[i] <= toleranceSq) ++predMatched;
    if (gtBoundary.data()[i] && toPred.data()[i] <= toleranceSq) ++gtMatched;
  }
  BoundaryScore s;
  s.precision = static_cast<double>(predMatched) / static_cast<double>(predCount);
  s.recall = static_cast<double>(gtMatched) / static_cast<double>(gtCount);
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

double mean_boundary_f1(const LabelMask& pred, const LabelMask& gt, const BoundaryConfig& config) {
  double sum = 0;
  int classes = 0;
  for (Label label : {Label::Gland, Label::Stroma}) {
    const auto v = static_cast<std::uint8_t>(label);
    if (!(pred.raw().array() == v).any() && !(gt.raw().array() == v).any()) continue;
    sum += boundary_f1(pred, gt, label, config).f1;
    ++classes;
  }
  return classes == 0 ? 1.0 : sum / classes;
}

}  // namespace glandseg
