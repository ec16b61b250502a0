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

#include "glandseg/ml.hpp"

namespace glandseg {

Standardizer fit_standardizer(const Eigen::MatrixXd& features) {
  if (features.rows() < 2) throw InvalidArgument("fit_standardizer: at least 2 rows required");
  const auto n = static_cast<double>(features.rows());
  Standardizer model;
  model.mean = features.colwise().sum() / n;
  model.stdDev.resize(features.cols());
  for (Index j = 0; j < features.cols(); ++j) {
    const auto column = features.col(j);
    if (column.minCoeff() == column.maxCoeff()) {
      model.mean(j) = column(0);
      model.stdDev(j) = 0;
    } else {
      model.stdDev(j) = std::sqrt((column.array() - model.mean(j)).square().sum() / n);
    }
  }
  return model;
}

}  // namespace glandseg
