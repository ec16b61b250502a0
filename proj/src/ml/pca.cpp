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

#include <Eigen/Eigenvalues>

#include "glandseg/ml.hpp"

namespace glandseg {

PcaModel pca_fit(const Eigen::MatrixXd& features, PcaKeep keep) {
  const Index n = features.rows();
  const Index d = features.cols();
  if (n < 2) throw InvalidArgument("pca_fit: at least 2 rows required");
  if (d < 1) throw InvalidArgument("pca_fit: no columns");

  PcaModel model;
  model.columnMeans = features.colwise().mean();
  const Eigen::MatrixXd centered = features.rowwise() - model.columnMeans;
  const Eigen::MatrixXd covariance = (centered.adjoint() * centered) / static_cast<double>(n - 1);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) throw DegenerateInput("pca_fit: eigen-decomposition failed");

  // Eigen returns ascending eigenvalues; reverse to descending.
  Eigen::VectorXd eigenvalues = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();
  const double largest = std::max(eigenvalues(0), 0.0);
  for (Index i = 0; i < d; ++i)
    if (eigenvalues(i) <= 1e-12 * largest) eigenvalues(i) = 0;

  const double total = eigenvalues.sum();
  const Eigen::VectorXd ratios =
      total > 0 ? Eigen::VectorXd(eigenvalues / total) : Eigen::VectorXd::Zero(d);

  Index k = 0;
  if (const auto* count = std::get_if<ComponentCount>(&keep)) {
    if (count->count < 1 || count->count > d)
      throw InvalidArgument("pca_fit: component count must be in [1, " + std::to_string(d) + "]");
    k = count->count;
  } else {
    const double fraction = std::get<VarianceFraction>(keep).fraction;
    if (!(fraction > 0 && fraction <= 1))
      throw InvalidArgument("pca_fit: variance fraction must be in (0, 1]");
    double cumulative = 0;
    while (k < d) {
      cumulative += ratios(k++);
      if (cumulative >= fraction - 1e-12) break;
    }
  }

  model.components = vectors.leftCols(k).transpose();
  for (Index i = 0; i < k; ++i) {
    Index pivot = 0;
    model.components.row(i).cwiseAbs().maxCoeff(&pivot);
    if (model.components(i, pivot) < 0) model.components.row(i) *= -1;
  }
  model.explainedVarianceRatio = ratios.head(k);
  return model;
}

Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& projected) {
  if (projected.cols() != model.output_dimension())
    throw DimensionMismatch("pca_reconstruct: column count does not match component count");
  return (projected * model.components).rowwise() + model.columnMeans;
}

}  // namespace glandseg
