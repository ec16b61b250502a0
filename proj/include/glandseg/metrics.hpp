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

#ifndef GLANDSEG_METRICS_HPP
#define GLANDSEG_METRICS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "glandseg/image.hpp"

namespace glandseg {

/// Pixel tabulation for one positive class. Pixels whose ground truth is
/// Label::Ignore are left out of every count.
struct OverlapCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  friend bool operator==(const OverlapCounts&, const OverlapCounts&) = default;
};

OverlapCounts binary_overlap(const LabelMask& pred, const LabelMask& gt, Label positive);

/// 2TP / (2TP + FP + FN); 1 when both sets are empty.
double dice(const OverlapCounts& counts);
/// TP / (TP + FP + FN); 1 when both sets are empty.
double jaccard(const OverlapCounts& counts);

/// Per-class counts over the labeled (non-ignore) ground-truth pixels.
struct MultiClassPixelCounts {
  static constexpr int kClasses = 2;  // gland, stroma
  std::array<std::uint64_t, kClasses> tp{};
  std::array<std::uint64_t, kClasses> fp{};
  std::array<std::uint64_t, kClasses> fn{};
  /// Ground-truth pixel count per class.
  std::array<std::uint64_t, kClasses> weight{};
};

MultiClassPixelCounts multiclass_counts(const LabelMask& pred, const LabelMask& gt);

struct RegionMetrics {
  double globalAccuracy = 0;
  double meanAccuracy = 0;
  double meanIoU = 0;
  double weightedIoU = 0;
};

/// Global accuracy = correct / labeled; mean accuracy and mean IoU average the
/// per-class recall and IoU over classes present in the ground truth; weighted
/// IoU weights each class IoU by its ground-truth pixel count.
RegionMetrics region_metrics(const LabelMask& pred, const LabelMask& gt);

struct BoundaryConfig {
  /// Negative selects the default of 0.75% of the image diagonal.
  double toleranceDistance = -1;

  double resolve(Index width, Index height) const;
};

/// Boundary pixels of `label`: pixels carrying the label with at least one
/// in-image 4-neighbor carrying a different label.
Raster<std::uint8_t> class_boundary(const LabelMask& mask, Label label);

/// Squared Euclidean distance from every pixel to the nearest set pixel of
/// `points`; +infinity everywhere when `points` is empty.
Raster<double> squared_distance_transform(const Raster<std::uint8_t>& points);

struct BoundaryScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// BF score of one class. Both boundaries empty scores 1; exactly one empty scores 0.
BoundaryScore boundary_f1(const LabelMask& pred, const LabelMask& gt, Label label, const BoundaryConfig& config);

/// Mean BF score over the classes present in either mask.
double mean_boundary_f1(const LabelMask& pred, const LabelMask& gt, const BoundaryConfig& config);

struct ClassScores {
  double dice = 0;
  double jaccard = 0;
  double accuracy = 0;
  double iou = 0;
  double bfScore = 0;
};

struct SegmentationReport {
  /// Index 0 is gland, 1 stroma.
  std::array<ClassScores, 2> classes{};
  double globalAccuracy = 0;
  double meanAccuracy = 0;
  double meanIoU = 0;
  double weightedIoU = 0;
  double meanBFScore = 0;
  /// Number of image pairs the report summarizes.
  std::size_t imageCount = 1;
  double tolerance = 0;
};

SegmentationReport evaluate(const LabelMask& pred, const LabelMask& gt, const BoundaryConfig& config = {});

/// Arithmetic mean of every field over several per-image reports (N = reports.size()).
SegmentationReport average_reports(std::span<const SegmentationReport> reports);

}  // namespace glandseg

#endif  // GLANDSEG_METRICS_HPP
