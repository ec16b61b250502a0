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

#ifndef GLANDSEG_IO_REPORT_FILE_HPP
#define GLANDSEG_IO_REPORT_FILE_HPP

#include <filesystem>
#include <string>

#include "glandseg/io/documents.hpp"
#include "glandseg/metrics.hpp"
#include "glandseg/ml.hpp"

namespace glandseg::io {

inline constexpr std::string_view kReportKind = "glandseg-segmentation-report";
inline constexpr std::string_view kCvReportKind = "glandseg-cv-report";

Json report_to_json(const SegmentationReport& report);
SegmentationReport report_from_json(const Json& payload);
std::string format_report(const SegmentationReport& report);
SegmentationReport parse_report(std::string_view text);
void save_report(const SegmentationReport& report, const std::filesystem::path& path);
SegmentationReport load_report(const std::filesystem::path& path);

Json cv_report_to_json(const CvReport& report);
std::string format_cv_report(const CvReport& report);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_REPORT_FILE_HPP
