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

#include "glandseg/io/manifest.hpp"

#include "glandseg/io/documents.hpp"
#include "glandseg/io/image_codec.hpp"

namespace glandseg::io {
namespace {

constexpr std::string_view kManifestKind = "glandseg-manifest";

std::string_view to_string(Split split) { return split == Split::Train ? "train" : "test"; }

Json record_to_json(const PatchRecord& r) {
  Json j = {{"image", r.image}, {"x", r.x}, {"y", r.y}, {"split", to_string(r.split)}};
  if (r.mask) j["mask"] = *r.mask;
  if (r.label) j["label"] = glandseg::to_string(*r.label);
  if (r.magnification) j["magnification"] = *r.magnification;
  return j;
}

PatchRecord record_from_json(const Json& j, std::size_t index) {
  const std::string where = "manifest record " + std::to_string(index);
  const auto field_error = [&](std::string_view field, std::string_view why) {
    return DataError(where + " field '" + std::string(field) + "': " + std::string(why));
  };
  if (!j.is_object()) throw DataError(where + ": not an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "image" && key != "mask" && key != "x" && key != "y" && key != "split" && key != "label" &&
        key != "magnification")
      throw field_error(key, "unknown field");
  }

  PatchRecord r;
  const Json& image = require_field(j, "image", where);
  if (!image.is_string() || image.get<std::string>().empty()) throw field_error("image", "must be a non-empty string");
  r.image = image.get<std::string>();
  if (const auto m = j.find("mask"); m != j.end()) {
    if (!m->is_string() || m->get<std::string>().empty()) throw field_error("mask", "must be a non-empty string");
    r.mask = m->get<std::string>();
  }
  for (const char* axis : {"x", "y"}) {
    const Json& v = require_field(j, axis, where);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw field_error(axis, "must be a non-negative integer");
    (axis[0] == 'x' ? r.x : r.y) = v.get<Index>();
  }
  const Json& split = require_field(j, "split", where);
  if (split == "train")
    r.split = Split::Train;
  else if (split == "test")
    r.split = Split::Test;
  else
    throw field_error("split", "must be \"train\" or \"test\"");
  if (const auto l = j.find("label"); l != j.end()) {
    if (!l->is_string()) throw field_error("label", "must be a string");
    try {
      r.label = parse_class_label(l->get<std::string>());
    } catch (const DataError& e) {
      throw field_error("label", e.what());
    }
  }
  if (const auto m = j.find("magnification"); m != j.end()) {
    if (!m->is_number() || !(m->get<double>() > 0)) throw field_error("magnification", "must be a positive number");
    r.magnification = m->get<double>();
  }
  return r;
}

}  // namespace

std::filesystem::path resolve_reference(const std::filesystem::path& manifest, const std::string& reference) {
  const std::filesystem::path ref(reference);
  return ref.is_absolute() ? ref : manifest.parent_path() / ref;
}

std::vector<PatchRecord> parse_manifest(std::string_view text) {
  const Json payload = open_document(text, kManifestKind, false);
  const Json& records = require_field(payload, "records", "manifest");
  if (!records.is_array()) throw DataError("manifest: field 'records' must be an array");
  std::vector<PatchRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) out.push_back(record_from_json(records[i], i));
  return out;
}

std::vector<PatchRecord> load_manifest(const std::filesystem::path& path, bool checkFiles) {
  std::vector<PatchRecord> records;
  try {
    records = parse_manifest(read_text(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (checkFiles) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto check = [&](const std::string& ref, std::string_view field) {
        const auto resolved = resolve_reference(path, ref);
        if (!std::filesystem::exists(resolved))
          throw DataError(path.string() + ": manifest record " + std::to_string(i) + " field '" +
                          std::string(field) + "': file not found: " + resolved.string());
      };
      check(records[i].image, "image");
      if (records[i].mask) check(*records[i].mask, "mask");
    }
  }
  return records;
}

std::string format_manifest(const std::vector<PatchRecord>& records) {
  Json list = Json::array();
  for (const PatchRecord& r : records) list.push_back(record_to_json(r));
  return seal_document(kManifestKind, Json{{"records", list}});
}

void save_manifest(const std::vector<PatchRecord>& records, const std::filesystem::path& path) {
  write_text_atomic(path, format_manifest(records));
}

}  // namespace glandseg::io
