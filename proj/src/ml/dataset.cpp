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

#include <set>

#include "glandseg/ml.hpp"

namespace glandseg {

std::string_view to_string(ClassLabel label) {
  return label == ClassLabel::Gland ? "gland" : "stroma";
}

ClassLabel parse_class_label(std::string_view text) {
  if (text == "gland") return ClassLabel::Gland;
  if (text == "stroma") return ClassLabel::Stroma;
  throw DataError("unknown class label '" + std::string(text) + "' (expected gland or stroma)");
}

void Dataset::validate() const {
  if (static_cast<Index>(labels.size()) != features.rows())
    throw DataError("Dataset: label count does not match row count");
  if (static_cast<Index>(columns.size()) != features.cols())
    throw DataError("Dataset: column name count does not match column count");
  std::set<std::string> unique(columns.begin(), columns.end());
  if (unique.size() != columns.size()) throw DataError("Dataset: duplicate column names");
  if (!features.allFinite()) throw DataError("Dataset: non-finite feature value");
  if (featureConfig && featureConfig->column_names() != columns)
    throw DataError("Dataset: feature config does not describe the columns");
}

Dataset Dataset::subset(std::span<const Index> rows) const {
  Dataset out;
  out.columns = columns;
  out.featureConfig = featureConfig;
  out.features.resize(static_cast<Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = features.row(rows[i]);
    out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

Index Dataset::count(ClassLabel label) const {
  return static_cast<Index>(std::count(labels.begin(), labels.end(), label));
}

void ConfusionCounts::add(ClassLabel truth, ClassLabel predicted) {
  if (truth == ClassLabel::Gland)
    (predicted == ClassLabel::Gland ? tp : fn) += 1;
  else
    (predicted == ClassLabel::Stroma ? tn : fp) += 1;
}

double classification_accuracy(const ConfusionCounts& counts) {
  if (counts.total() == 0) throw InvalidArgument("classification_accuracy: no samples counted");
  return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
}

}  // namespace glandseg
