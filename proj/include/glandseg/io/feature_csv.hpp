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

#ifndef GLANDSEG_IO_FEATURE_CSV_HPP
#define GLANDSEG_IO_FEATURE_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "glandseg/ml.hpp"

namespace glandseg::io {

/// Header of feature column names plus a final "label" column, one sample per
/// line, shortest round-trip decimal numbers. The feature config is recovered
/// from the column names when they follow the texture naming scheme.
std::string format_feature_csv(const Dataset& dataset);
Dataset parse_feature_csv(std::string_view text);

void write_feature_csv(const Dataset& dataset, const std::filesystem::path& path);
Dataset read_feature_csv(const std::filesystem::path& path);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_FEATURE_CSV_HPP
