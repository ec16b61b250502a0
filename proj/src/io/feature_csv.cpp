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

#include <charconv>
#include <sstream>

#include "glandseg/io/documents.hpp"
#include "glandseg/io/feature_csv.hpp"
#include "glandseg/io/image_codec.hpp"

namespace glandseg::io {
namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string format_feature_csv(const Dataset& dataset) {
  dataset.validate();
  std::string out;
  for (const std::string& name : dataset.columns) {
    if (name.find_first_of(",\"\n\r") != std::string::npos || name == "label")
      throw InvalidArgument("feature CSV: column name '" + name + "' is not representable");
    out += name;
    out += ',';
  }
  out += "label\n";
  char buf[32];
  for (Index r = 0; r < dataset.size(); ++r) {
    for (Index c = 0; c < dataset.dimension(); ++c) {
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, dataset.features(r, c));
      out.append(buf, end);
      out += ',';
    }
    out += to_string(dataset.labels[static_cast<std::size_t>(r)]);
    out += '\n';
  }
  return out;
}

Dataset parse_feature_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw DataError("feature CSV: empty file");

  const auto header = split_line(lines[0]);
  if (header.size() < 2 || header.back() != "label")
    throw DataError("feature CSV line 1: header must end with a 'label' column");
  Dataset dataset;
  for (std::size_t i = 0; i + 1 < header.size(); ++i) dataset.columns.emplace_back(header[i]);

  const auto rows = static_cast<Index>(lines.size() - 1);
  const auto cols = static_cast<Index>(dataset.columns.size());
  dataset.features.resize(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string where = "feature CSV line " + std::to_string(r + 2);
    const auto cells = split_line(lines[static_cast<std::size_t>(r + 1)]);
    if (static_cast<Index>(cells.size()) != cols + 1)
      throw DataError(where + ": expected " + std::to_string(cols + 1) + " fields, found " +
                      std::to_string(cells.size()));
    for (Index c = 0; c < cols; ++c) {
      const std::string_view cell = cells[static_cast<std::size_t>(c)];
      double value = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw DataError(where + " column '" + dataset.columns[static_cast<std::size_t>(c)] + "': not a number: '" +
                        std::string(cell) + "'");
      dataset.features(r, c) = value;
    }
    try {
      dataset.labels.push_back(parse_class_label(cells.back()));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  try {
    dataset.featureConfig = feature_config_from_columns(dataset.columns);
  } catch (const DataError&) {
    dataset.featureConfig.reset();
  }
  dataset.validate();
  return dataset;
}

void write_feature_csv(const Dataset& dataset, const std::filesystem::path& path) {
  write_text_atomic(path, format_feature_csv(dataset));
}

Dataset read_feature_csv(const std::filesystem::path& path) {
  try {
    return parse_feature_csv(read_text(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace glandseg::io
