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

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "glandseg/io/documents.hpp"

namespace glandseg::io {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::string hex;
  hex.reserve(length * 2);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string seal_document(std::string_view kind, const Json& payload) {
  Json doc;
  doc["formatVersion"] = kFormatVersion;
  doc["kind"] = kind;
  doc["payload"] = payload;
  doc["checksum"] = "sha256:" + sha256_hex(payload.dump());
  return doc.dump(2) + "\n";
}

Json open_document(std::string_view text, std::string_view expectedKind, bool requireChecksum) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string(expectedKind) + ": " + e.what());
  }
  const std::string context(expectedKind);
  if (!doc.is_object()) throw DataError(context + ": document is not an object");
  const Json& version = require_field(doc, "formatVersion", context);
  if (!version.is_number_integer()) throw DataError(context + ": field 'formatVersion' must be an integer");
  if (version.get<int>() != kFormatVersion)
    throw UnsupportedVersion(context + ": unsupported formatVersion " + version.dump() + " (supported: " +
                             std::to_string(kFormatVersion) + ")");
  const Json& kind = require_field(doc, "kind", context);
  if (!kind.is_string() || kind.get<std::string>() != expectedKind)
    throw DataError(context + ": field 'kind' is " + kind.dump() + ", expected \"" + context + "\"");
  const Json& payload = require_field(doc, "payload", context);
  const auto checksum = doc.find("checksum");
  if (checksum == doc.end()) {
    if (requireChecksum) throw IntegrityError(context + ": missing checksum");
  } else if (!checksum->is_string() || checksum->get<std::string>() != "sha256:" + sha256_hex(payload.dump())) {
    throw IntegrityError(context + ": checksum mismatch, the file was modified or corrupted");
  }
  return payload;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const Json& require_field(const Json& object, std::string_view name, std::string_view context) {
  const auto it = object.find(name);
  if (it == object.end())
    throw DataError(std::string(context) + ": missing field '" + std::string(name) + "'");
  return *it;
}

Json to_json(const FeatureConfig& config) {
  Json offsets = Json::array();
  for (const Offset& o : config.glcmOffsets) offsets.push_back({{"delta", o.delta()}, {"theta", o.degrees()}});
  return {
      {"glcmOffsets", offsets},
      {"lbpRadii", config.lbpRadii},
      {"levels", config.levels},
      {"glcmSymmetric", config.glcm.symmetric},
      {"glcmNormalize", config.glcm.normalize},
      {"lbpNeighbors", config.lbp.neighbors},
      {"lbpSampling", config.lbp.sampling == LbpSampling::Circular ? "circular" : "square"},
  };
}

FeatureConfig feature_config_from_json(const Json& json) {
  constexpr std::string_view ctx = "featureConfig";
  try {
    FeatureConfig config;
    for (const Json& o : require_field(json, "glcmOffsets", ctx))
      config.glcmOffsets.push_back(Offset::from_degrees(o.at("delta").get<int>(), o.at("theta").get<int>()));
    config.lbpRadii = require_field(json, "lbpRadii", ctx).get<std::vector<double>>();
    config.levels = require_field(json, "levels", ctx).get<int>();
    config.glcm.symmetric = require_field(json, "glcmSymmetric", ctx).get<bool>();
    config.glcm.normalize = require_field(json, "glcmNormalize", ctx).get<bool>();
    config.lbp.neighbors = require_field(json, "lbpNeighbors", ctx).get<int>();
    const auto sampling = require_field(json, "lbpSampling", ctx).get<std::string>();
    if (sampling == "circular")
      config.lbp.sampling = LbpSampling::Circular;
    else if (sampling == "square")
      config.lbp.sampling = LbpSampling::Square;
    else
      throw DataError("featureConfig: unknown lbpSampling '" + sampling + "'");
    config.validate();
    return config;
  } catch (const Json::exception& e) {
    throw DataError(std::string("featureConfig: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("featureConfig: ") + e.what());
  }
}

}  // namespace glandseg::io
