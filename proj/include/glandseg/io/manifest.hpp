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

#ifndef GLANDSEG_IO_MANIFEST_HPP
#define GLANDSEG_IO_MANIFEST_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "glandseg/ml.hpp"

namespace glandseg::io {

enum class Split { Train, Test };

/// One patch of a dataset manifest. Paths are stored as written; relative paths
/// resolve against the manifest's directory.
struct PatchRecord {
  std::string image;
  std::optional<std::string> mask;
  Index x = 0;
  Index y = 0;
  Split split = Split::Train;
  std::optional<ClassLabel> label;
  /// Carried through for provenance, never interpreted.
  std::optional<double> magnification;

  friend bool operator==(const PatchRecord&, const PatchRecord&) = default;
};

std::filesystem::path resolve_reference(const std::filesystem::path& manifest, const std::string& reference);

/// Validates schema, vocabulary and (when checkFiles) that every referenced file
/// exists; errors name the record index and field.
std::vector<PatchRecord> load_manifest(const std::filesystem::path& path, bool checkFiles = true);
std::vector<PatchRecord> parse_manifest(std::string_view text);
std::string format_manifest(const std::vector<PatchRecord>& records);
void save_manifest(const std::vector<PatchRecord>& records, const std::filesystem::path& path);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_MANIFEST_HPP
