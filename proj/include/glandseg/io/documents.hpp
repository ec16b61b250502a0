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

#ifndef GLANDSEG_IO_DOCUMENTS_HPP
#define GLANDSEG_IO_DOCUMENTS_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "glandseg/texture.hpp"

namespace glandseg::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

std::string sha256_hex(std::string_view data);

/// Wraps `payload` as {"checksum", "formatVersion", "kind", "payload"} where the
/// checksum is "sha256:" over the compact, key-sorted payload text. Output is
/// pretty-printed with sorted keys so identical payloads give identical bytes.
std::string seal_document(std::string_view kind, const Json& payload);

/// Parses and validates a sealed document and returns its payload. Throws
/// DataError (malformed / wrong kind), UnsupportedVersion or IntegrityError.
/// With requireChecksum false a missing checksum is accepted; a present one is
/// always verified.
Json open_document(std::string_view text, std::string_view expectedKind, bool requireChecksum = true);

std::string read_text(const std::filesystem::path& path);

Json to_json(const FeatureConfig& config);
FeatureConfig feature_config_from_json(const Json& json);

/// Typed field access with "<context>: field 'name'" diagnostics.
const Json& require_field(const Json& object, std::string_view name, std::string_view context);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_DOCUMENTS_HPP
