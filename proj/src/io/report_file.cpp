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

#include "glandseg/io/report_file.hpp"

#include "glandseg/io/image_codec.hpp"

namespace glandseg::io {
namespace {

constexpr std::array<std::string_view, 2> kClassNames = {"gland", "stroma"};

Json counts_json(const ConfusionCounts& c) { return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}}; }

}  // namespace

Json report_to_json(const SegmentationReport& report) {
  Json classes = Json::object();
  for (std::size_t i = 0; i < 2; ++i) {
    const ClassScores& s = report.classes[i];
    classes[std::string(kClassNames[i])] = {{"dice", s.dice},         {"jaccard", s.jaccard}, {"accuracy", s.accuracy},
                                            {"iou", s.iou},           {"bfScore", s.bfScore}};
  }
  return {{"classes", classes},
          {"globalAccuracy", report.globalAccuracy},
          {"meanAccuracy", report.meanAccuracy},
          {"meanIoU", report.meanIoU},
          {"weightedIoU", report.weightedIoU},
          {"meanBFScore", report.meanBFScore},
          {"imageCount", report.imageCount},
          {"boundaryTolerance", report.tolerance}};
}

SegmentationReport report_from_json(const Json& j) {
  try {
    SegmentationReport report;
    for (std::size_t i = 0; i < 2; ++i) {
      const Json& s = j.at("classes").at(std::string(kClassNames[i]));
      report.classes[i] = {s.at("dice").get<double>(), s.at("jaccard").get<double>(), s.at("accuracy").get<double>(),
                           s.at("iou").get<double>(), s.at("bfScore").get<double>()};
    }
    report.globalAccuracy = j.at("globalAccuracy").get<double>();
    report.meanAccuracy = j.at("meanAccuracy").get<double>();
    report.meanIoU = j.at("meanIoU").get<double>();
    report.weightedIoU = j.at("weightedIoU").get<double>();
    report.meanBFScore = j.at("meanBFScore").get<double>();
    report.imageCount = j.at("imageCount").get<std::size_t>();
    report.tolerance = j.at("boundaryTolerance").get<double>();
    return report;
  } catch (const Json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

std::string format_report(const SegmentationReport& report) {
  return seal_document(kReportKind, report_to_json(report));
}

SegmentationReport parse_report(std::string_view text) {
  return report_from_json(open_document(text, kReportKind, false));
}

void save_report(const SegmentationReport& report, const std::filesystem::path& path) {
  write_text_atomic(path, format_report(report));
}

SegmentationReport load_report(const std::filesystem::path& path) { return parse_report(read_text(path)); }

Json cv_report_to_json(const CvReport& report) {
  Json folds = Json::array();
  for (const FoldResult& f : report.folds) {
    folds.push_back({{"trainSize", f.trainSize},
                     {"validationSize", f.validation.size()},
                     {"accuracy", f.accuracy},
                     {"counts", counts_json(f.counts)}});
  }
  return {{"protocol", describe(report.protocol)},
          {"seed", report.seed},
          {"folds", folds},
          {"meanAccuracy", report.meanAccuracy},
          {"pooled", counts_json(report.pooled)}};
}

std::string format_cv_report(const CvReport& report) {
  return seal_document(kCvReportKind, cv_report_to_json(report));
}

}  // namespace glandseg::io
