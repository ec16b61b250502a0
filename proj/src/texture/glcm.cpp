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

#include <cmath>

#include "glandseg/texture.hpp"

namespace glandseg {

Offset Offset::from_degrees(int delta, int degrees) {
  switch (degrees) {
    case 0: return {delta, Angle::Deg0};
    case 45: return {delta, Angle::Deg45};
    case 90: return {delta, Angle::Deg90};
    case 135: return {delta, Angle::Deg135};
    default: throw InvalidArgument("Offset: angle must be one of 0, 45, 90, 135 degrees");
  }
}

Displacement Offset::displacement() const {
  switch (theta_) {
    case Angle::Deg0: return {0, delta_};
    case Angle::Deg45: return {-delta_, delta_};
    case Angle::Deg90: return {-delta_, 0};
    case Angle::Deg135: return {-delta_, -delta_};
  }
  throw InvalidArgument("Offset: invalid angle");
}

std::vector<Offset> standard_offset_grid() {
  std::vector<Offset> grid;
  for (int delta : {1, 2, 4, 8, 16})
    for (Angle theta : {Angle::Deg0, Angle::Deg45, Angle::Deg90, Angle::Deg135})
      grid.emplace_back(delta, theta);
  return grid;
}

Glcm compute_glcm(const GrayImage& image, Offset offset, GlcmOptions options) {
  return compute_glcm(image.values(), image.levels(), offset, options);
}

HaralickFeatures haralick_features(const Glcm& glcm) {
  const Index levels = glcm.cells.rows();
  Eigen::MatrixXd p = glcm.cells;
  if (!glcm.normalized) {
    const double total = p.sum();
    if (total <= 0) throw DegenerateInput("haralick_features: empty co-occurrence matrix");
    p /= total;
  }

  const Eigen::VectorXd rowMarginal = p.rowwise().sum();
  const Eigen::RowVectorXd colMarginal = p.colwise().sum();
  const Eigen::VectorXd index = Eigen::VectorXd::LinSpaced(levels, 0, static_cast<double>(levels - 1));

  const double muRow = rowMarginal.dot(index);
  const double muCol = colMarginal.dot(index.transpose());
  const double varRow = rowMarginal.dot((index.array() - muRow).square().matrix());
  const double varCol = colMarginal.dot((index.array() - muCol).square().matrix().transpose());

  HaralickFeatures f;
  double entropy = 0;
  double covariance = 0;
  for (Index i = 0; i < levels; ++i) {
    for (Index j = 0; j < levels; ++j) {
      const double pij = p(i, j);
      if (pij == 0) continue;
      const double diff = static_cast<double>(i - j);
      f.contrast += pij * diff * diff;
      f.dissimilarity += pij * std::abs(diff);
      f.energy += pij * pij;
      f.homogeneity += pij / (1.0 + diff * diff);
      entropy -= pij * std::log(pij);
      covariance += (static_cast<double>(i) - muRow) * (static_cast<double>(j) - muCol) * pij;
    }
  }
  f.entropy = entropy + 0.0;
  f.mean = muRow;
  f.stdDev = std::sqrt(varRow);

  const double spread = std::sqrt(varRow) * std::sqrt(varCol);
  f.correlation = spread == 0 ? 1.0 : std::clamp(covariance / spread, -1.0, 1.0);
  return f;
}

}  // namespace glandseg
