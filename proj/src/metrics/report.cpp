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

SegmentationReport evaluate(const LabelMask& pred, const LabelMask& gt, const BoundaryConfig& config) {
  const RegionMetrics region = region_metrics(pred, gt);
  const MultiClassPixelCounts counts = multiclass_counts(pred, gt);

  SegmentationReport report;
  report.globalAccuracy = region.globalAccuracy;
  report.meanAccuracy = region.meanAccuracy;
  report.meanIoU = region.meanIoU;
  report.weightedIoU = region.weightedIoU;
  report.meanBFScore = mean_boundary_f1(pred, gt, config);
  report.tolerance = config.resolve(gt.width(), gt.height());

  for (int i = 0; i < 2; ++i) {
    const Label label = i == 0 ? Label::Gland : Label::Stroma;
    const OverlapCounts overlap = binary_overlap(pred, gt, label);
    ClassScores& s = report.classes[static_cast<std::size_t>(i)];
    s.dice = dice(overlap);
    s.jaccard = jaccard(overlap);
    s.iou = s.jaccard;
    s.accuracy = counts.weight[i] > 0
                     ? static_cast<double>(counts.tp[i]) / static_cast<double>(counts.weight[i])
                     : (counts.fp[i] == 0 ? 1.0 : 0.0);
    s.bfScore = boundary_f1(pred, gt, label, config).f1;
  }
  return report;
}

SegmentationReport average_reports(std::span<const SegmentationReport> reports) {
  if (reports.empty()) throw InvalidArgument("average_reports: no reports");
  SegmentationReport mean;
  mean.imageCount = reports.size();
  const auto n = static_cast<double>(reports.size());
  for (const SegmentationReport& r : reports) {
    for (std::size_t i = 0; i < 2; ++i) {
      mean.classes[i].dice += r.classes[i].dice / n;
      mean.classes[i].jaccard += r.classes[i].jaccard / n;
      mean.classes[i].accuracy += r.classes[i].accuracy / n;
      mean.classes[i].iou += r.classes[i].iou / n;
      mean.classes[i].bfScore += r.classes[i].bfScore / n;
    }
    mean.globalAccuracy += r.globalAccuracy / n;
    mean.meanAccuracy += r.meanAccuracy / n;
    mean.meanIoU += r.meanIoU / n;
    mean.weightedIoU += r.weightedIoU / n;
    mean.meanBFScore += r.meanBFScore / n;
    mean.tolerance += r.tolerance / n;
  }
  return mean;
}

}  // namespace glandseg
