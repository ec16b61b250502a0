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

#include "glandseg/metrics.hpp"

namespace glandseg {
namespace {

void require_same_size(const LabelMask& pred, const LabelMask& gt, const char* what) {
  if (pred.width() != gt.width() || pred.height() != gt.height())
    throw DimensionMismatch(std::string(what) + ": prediction and ground truth dimensions differ");
}

double ratio_or_one(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

OverlapCounts binary_overlap(const LabelMask& pred, const LabelMask& gt, Label positive) {
  require_same_size(pred, gt, "binary_overlap");
  OverlapCounts counts;
  const auto& p = pred.raw();
  const auto& g = gt.raw();
  const auto pos = static_cast<std::uint8_t>(positive);
  for (Index i = 0; i < g.size(); ++i) {
    const std::uint8_t truth = g.data()[i];
    if (truth == static_cast<std::uint8_t>(Label::Ignore)) continue;
    const bool predicted = p.data()[i] == pos;
    const bool actual = truth == pos;
    if (predicted && actual) ++counts.tp;
    else if (predicted) ++counts.fp;
    else if (actual) ++counts.fn;
    else ++counts.tn;
  }
  return counts;
}

double dice(const OverlapCounts& c) { return ratio_or_one(2 * c.tp, 2 * c.tp + c.fp + c.fn); }

double jaccard(const OverlapCounts& c) { return ratio_or_one(c.tp, c.tp + c.fp + c.fn); }

MultiClassPixelCounts multiclass_counts(const LabelMask& pred, const LabelMask& gt) {
  require_same_size(pred, gt, "multiclass_counts");
  MultiClassPixelCounts counts;
  const auto& p = pred.raw();
  const auto& g = gt.raw();
  for (Index i = 0; i < g.size(); ++i) {
    const int truth = g.data()[i];
    if (truth == 0) continue;
    const int predicted = p.data()[i];
    counts.weight[truth - 1] += 1;
    if (predicted == truth) {
      counts.tp[truth - 1] += 1;
    } else {
      counts.fn[truth - 1] += 1;
      if (predicted != 0) counts.fp[predicted - 1] += 1;
    }
  }
  return counts;
}

RegionMetrics region_metrics(const LabelMask& pred, const LabelMask& gt) {
  const MultiClassPixelCounts c = multiclass_counts(pred, gt);
  std::uint64_t correct = 0, labeled = 0;
  double accuracySum = 0, iouSum = 0, weightedSum = 0;
  int present = 0;
  for (int i = 0; i < MultiClassPixelCounts::kClasses; ++i) {
    correct += c.tp[i];
    labeled += c.weight[i];
    if (c.weight[i] == 0) continue;
    ++present;
    const double iou = static_cast<double>(c.tp[i]) / static_cast<double>(c.tp[i] + c.fp[i] + c.fn[i]);
    accuracySum += static_cast<double>(c.tp[i]) / static_cast<double>(c.weight[i]);
    iouSum += iou;
    weightedSum += static_cast<double>(c.weight[i]) * iou;
  }
  if (labeled == 0) throw DegenerateInput("region_metrics: ground truth has no labeled pixels");
  RegionMetrics m;
  m.globalAccuracy = static_cast<double>(correct) / static_cast<double>(labeled);
  m.meanAccuracy = accuracySum / present;
  m.meanIoU = iouSum / present;
  m.weightedIoU = weightedSum / static_cast<double>(labeled);
  return m;
}

}  // namespace glandseg
