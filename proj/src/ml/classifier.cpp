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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "glandseg/ml.hpp"

namespace glandseg {
namespace {

double sign_of(ClassLabel label) { return label == ClassLabel::Gland ? 1.0 : -1.0; }

KnnParameters train_knn(const Eigen::MatrixXd& rows, const std::vector<ClassLabel>& labels, int k) {
  if (k < 1 || k > rows.rows())
    throw InvalidArgument("train_classifier: knn k must be in [1, sample count]");
  return {k, rows, labels};
}

GaussianNbParameters train_gaussian_nb(const Eigen::MatrixXd& rows, const std::vector<ClassLabel>& labels) {
  constexpr double kVarianceFloor = 1e-9;
  GaussianNbParameters nb;
  nb.means = Eigen::MatrixXd::Zero(2, rows.cols());
  nb.variances = Eigen::MatrixXd::Zero(2, rows.cols());
  for (int c = 0; c < 2; ++c) {
    const ClassLabel label = c == 0 ? ClassLabel::Gland : ClassLabel::Stroma;
    std::vector<Index> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) members.push_back(static_cast<Index>(i));
    const auto n = static_cast<double>(members.size());
    for (Index i : members) nb.means.row(c) += rows.row(i);
    nb.means.row(c) /= n;
    for (Index i : members) nb.variances.row(c) += (rows.row(i) - nb.means.row(c)).array().square().matrix();
    nb.variances.row(c) = (nb.variances.row(c) / n).cwiseMax(kVarianceFloor);
    nb.logPriors(c) = std::log(n / static_cast<double>(labels.size()));
  }
  return nb;
}

// Pegasos: stochastic subgradient steps of size 1 / (lambda t) on the
// regularized hinge loss, with projection onto the ball of radius 1/sqrt(lambda).
// The bias is carried as a constant unit feature. Each epoch visits the samples
// in a seeded order and proposes its averaged iterate; the proposal replaces the
// current solution only when it does not raise the full objective, so the
// objective of the returned iterates never increases from one epoch to the next.
LinearSvmParameters train_linear_svm(const Eigen::MatrixXd& rows, const std::vector<ClassLabel>& labels,
                                     const TrainSpec& spec, TrainingTrace* trace) {
  if (!(spec.lambda > 0)) throw InvalidArgument("train_classifier: svm lambda must be positive");
  if (spec.epochs < 1) throw InvalidArgument("train_classifier: svm epochs must be >= 1");
  const Index n = rows.rows();
  const Index d = rows.cols();
  const double radius = 1.0 / std::sqrt(spec.lambda);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
  Eigen::VectorXd x(d + 1);
  Eigen::VectorXd average(d + 1);
  LinearSvmParameters result{Eigen::VectorXd::Zero(d), 0.0};
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    const auto order = seeded_permutation(n, spec.seed + static_cast<std::uint64_t>(epoch));
    average.setZero();
    for (Index i : order) {
      ++t;
      const double eta = 1.0 / (spec.lambda * static_cast<double>(t));
      x.head(d) = rows.row(i).transpose();
      x(d) = 1.0;
      const double y = sign_of(labels[static_cast<std::size_t>(i)]);
      const bool violated = y * w.dot(x) < 1.0;
      w *= 1.0 - eta * spec.lambda;
      if (violated) w += eta * y * x;
      const double norm = w.norm();
      if (norm > radius) w *= radius / norm;
      average += w;
    }
    average /= static_cast<double>(n);
    const LinearSvmParameters proposal{average.head(d), average(d)};
    const double objective = svm_objective(proposal, rows, labels, spec.lambda);
    if (objective <= best) {
      best = objective;
      result = proposal;
    }
    if (trace) trace->epochObjective.push_back(best);
  }
  return result;
}

Prediction predict_knn(const KnnParameters& knn, const Eigen::VectorXd& z) {
  const Index n = knn.rows.rows();
  const Eigen::VectorXd distances = (knn.rows.rowwise() - z.transpose()).rowwise().norm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const auto k = static_cast<std::size_t>(std::min<Index>(knn.k, n));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](Index a, Index b) {
                      return distances(a) < distances(b) || (distances(a) == distances(b) && a < b);
                    });
  int glandVotes = 0;
  double glandWeight = 0, totalWeight = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double weight = 1.0 / (1.0 + distances(order[i]));
    totalWeight += weight;
    if (knn.labels[static_cast<std::size_t>(order[i])] == ClassLabel::Gland) {
      ++glandVotes;
      glandWeight += weight;
    }
  }
  const int stromaVotes = static_cast<int>(k) - glandVotes;
  if (glandVotes >= stromaVotes) return {ClassLabel::Gland, glandWeight / totalWeight};
  return {ClassLabel::Stroma, (totalWeight - glandWeight) / totalWeight};
}

Prediction predict_nb(const GaussianNbParameters& nb, const Eigen::VectorXd& z) {
  Eigen::Vector2d logPosterior = nb.logPriors;
  for (int c = 0; c < 2; ++c) {
    const Eigen::ArrayXd var = nb.variances.row(c).transpose().array();
    const Eigen::ArrayXd diff = z.array() - nb.means.row(c).transpose().array();
    logPosterior(c) += (-0.5 * (2.0 * std::numbers::pi * var).log() - diff.square() / (2.0 * var)).sum();
  }
  const double margin = logPosterior(0) - logPosterior(1);
  return {margin >= 0 ? ClassLabel::Gland : ClassLabel::Stroma, margin};
}

Prediction predict_svm(const LinearSvmParameters& svm, const Eigen::VectorXd& z) {
  const double margin = svm.weights.dot(z) + svm.bias;
  return {margin >= 0 ? ClassLabel::Gland : ClassLabel::Stroma, margin};
}

}  // namespace

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::GaussianNb: return "gaussian-nb";
    case ClassifierKind::LinearSvm: return "linear-svm";
  }
  return "unknown";
}

ClassifierKind parse_classifier_kind(std::string_view text) {
  if (text == "knn") return ClassifierKind::Knn;
  if (text == "nb" || text == "gaussian-nb") return ClassifierKind::GaussianNb;
  if (text == "svm" || text == "linear-svm") return ClassifierKind::LinearSvm;
  throw InvalidArgument("unknown classifier kind '" + std::string(text) + "' (expected svm, knn or nb)");
}

double svm_objective(const LinearSvmParameters& svm, const Eigen::MatrixXd& rows,
                     std::span<const ClassLabel> labels, double lambda) {
  const Eigen::VectorXd margins = (rows * svm.weights).array() + svm.bias;
  double hinge = 0;
  for (Index i = 0; i < rows.rows(); ++i)
    hinge += std::max(0.0, 1.0 - sign_of(labels[static_cast<std::size_t>(i)]) * margins(i));
  const double normSq = svm.weights.squaredNorm() + svm.bias * svm.bias;
  return 0.5 * lambda * normSq + hinge / static_cast<double>(rows.rows());
}

ClassifierModel train_classifier(const Dataset& dataset, const TrainSpec& spec, TrainingTrace* trace) {
  dataset.validate();
  if (dataset.size() == 0) throw DegenerateInput("train_classifier: empty dataset");
  if (dataset.count(ClassLabel::Gland) == 0 || dataset.count(ClassLabel::Stroma) == 0)
    throw DegenerateInput("train_classifier: both gland and stroma samples are required");

  ClassifierModel model;
  model.kind = spec.kind;
  model.spec = spec;
  model.columns = dataset.columns;
  model.trainingSamples = dataset.size();
  model.featureConfig = dataset.featureConfig;
  if (!model.featureConfig) {
    try {
      model.featureConfig = feature_config_from_columns(dataset.columns);
    } catch (const DataError&) {
      // Columns not produced by the texture extractor; the model is still usable
      // on explicit feature vectors but not for image segmentation.
    }
  }

  model.standardizer = fit_standardizer(dataset.features);
  Eigen::MatrixXd rows = apply_standardizer(model.standardizer, dataset.features);
  if (spec.pca) {
    model.pca = pca_fit(rows, *spec.pca);
    rows = pca_project(*model.pca, rows);
  }

  switch (spec.kind) {
    case ClassifierKind::Knn:
      model.parameters = train_knn(rows, dataset.labels, spec.k);
      break;
    case ClassifierKind::GaussianNb:
      model.parameters = train_gaussian_nb(rows, dataset.labels);
      break;
    case ClassifierKind::LinearSvm:
      model.parameters = train_linear_svm(rows, dataset.labels, spec, trace);
      break;
  }
  return model;
}

void ClassifierModel::validate() const {
  const Index d = input_dimension();
  if (standardizer.stdDev.size() != d) throw DataError("model: standardizer shape mismatch");
  if (static_cast<Index>(columns.size()) != d) throw DataError("model: column count mismatch");
  if (featureConfig && featureConfig->column_names() != columns)
    throw DataError("model: feature config does not describe the columns");
  if (pca) {
    if (pca->input_dimension() != d || pca->columnMeans.size() != d ||
        pca->explainedVarianceRatio.size() != pca->output_dimension())
      throw DataError("model: PCA shape mismatch");
  }
  const Index m = model_dimension();
  const bool ok = std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnnParameters>)
          return kind == ClassifierKind::Knn && p.rows.cols() == m &&
                 p.rows.rows() == static_cast<Index>(p.labels.size()) && p.k >= 1 && p.k <= p.rows.rows();
        else if constexpr (std::is_same_v<T, GaussianNbParameters>)
          return kind == ClassifierKind::GaussianNb && p.means.rows() == 2 && p.means.cols() == m &&
                 p.variances.rows() == 2 && p.variances.cols() == m && (p.variances.array() > 0).all();
        else
          return kind == ClassifierKind::LinearSvm && p.weights.size() == m;
      },
      parameters);
  if (!ok) throw DataError("model: classifier parameters do not match kind or dimension");
}

Prediction ClassifierModel::predict(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  if (features.size() != input_dimension())
    throw DimensionMismatch("predict: expected " + std::to_string(input_dimension()) + " features, got " +
                            std::to_string(features.size()));
  Eigen::VectorXd z = ((features.transpose() - standardizer.mean).array() / standardizer.divisor().array())
                          .matrix()
                          .transpose();
  if (pca) z = pca->components * (z - pca->columnMeans.transpose());
  return std::visit(
      [&](const auto& p) -> Prediction {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnnParameters>)
          return predict_knn(p, z);
        else if constexpr (std::is_same_v<T, GaussianNbParameters>)
          return predict_nb(p, z);
        else
          return predict_svm(p, z);
      },
      parameters);
}

}  // namespace glandseg
