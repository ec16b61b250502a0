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

#ifndef GLANDSEG_IO_MODEL_FILE_HPP
#define GLANDSEG_IO_MODEL_FILE_HPP

#include <filesystem>
#include <string>

#include "glandseg/io/documents.hpp"
#include "glandseg/ml.hpp"

namespace glandseg::io {

inline constexpr std::string_view kModelKind = "glandseg-model";

Json model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const Json& payload);

std::string format_model(const ClassifierModel& model);
ClassifierModel parse_model(std::string_view text);

void save_model(const ClassifierModel& model, const std::filesystem::path& path);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_MODEL_FILE_HPP
