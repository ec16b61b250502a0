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

#ifndef GLANDSEG_ML_HPP
#define GLANDSEG_ML_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "glandseg/error.hpp"
#include "glandseg/texture.hpp"

namespace glandseg {

/// Binary tissue class; gland is the positive class. Numeric values match the
/// mask vocabulary. Ties are always resolved toward gland ("gland" < "stroma").
enum class ClassLabel : std::uint8_t { Gland = 1, Stroma = 2 };

std::string_view to_string(ClassLabel label);
/// Accepts "gland" / "stroma"; throws DataError otherwise.
ClassLabel parse_class_label(std::string_view text);

/// Samples x named feature columns with one class label per row.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<std::string> columns;
  std::vector<ClassLabel> labels;
  /// Set when the columns were produced by patch_features with this config.
  std::optional<FeatureConfig> featureConfig;

  Index size() const { return features.rows(); }
  Index dimension() const { return features.cols(); }
  /// Throws DataError on any violated invariant (label count, unique names, finiteness).
  void validate() const;
  Dataset subset(std::span<const Index> rows) const;
  Index count(ClassLabel label) const;
};

// ---------------------------------------------------------------------------
// Standardization

struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd stdDev;

  Index dimension() const { return mean.size(); }
  /// Column divisor: stdDev, or 1 for a zero-variance column.
  Eigen::RowVectorXd divisor() const {
    return (stdDev.array() > 0).select(stdDev, Eigen::RowVectorXd::Ones(stdDev.size()));
  }
  static Standardizer identity(Index dimension) {
    return {Eigen::RowVectorXd::Zero(dimension), Eigen::RowVectorXd::Ones(dimension)};
  }
};

/// Population mean and standard deviation per column; requires >= 2 rows.
Standardizer fit_standardizer(const Eigen::MatrixXd& features);

template <typename Derived>
Eigen::MatrixXd apply_standardizer(const Standardizer& model, const Eigen::MatrixBase<Derived>& features) {
  if (features.cols() != model.dimension())
    throw DimensionMismatch("apply_standardizer: column count does not match the fitted model");
  return ((features.rowwise() - model.mean).array().rowwise() / model.divisor().array()).matrix();
}

// ---------------------------------------------------------------------------
// PCA

struct ComponentCount {
  Index count;
};
struct VarianceFraction {
  double fraction;
};
using PcaKeep = std::variant<ComponentCount, VarianceFraction>;

struct PcaModel {
  Eigen::RowVectorXd columnMeans;
  /// k x d, orthonormal rows sorted by decreasing explained variance.
  Eigen::MatrixXd components;
  Eigen::VectorXd explainedVarianceRatio;

  Index input_dimension() const { return components.cols(); }
  Index output_dimension() const { return components.rows(); }
};

/// Eigen-decomposition of the sample covariance. Each component's sign is fixed
/// so that its largest-magnitude coefficient is positive.
PcaModel pca_fit(const Eigen::MatrixXd& features, PcaKeep keep);

template <typename Derived>
Eigen::MatrixXd pca_project(const PcaModel& model, const Eigen::MatrixBase<Derived>& features) {
  if (features.cols() != model.input_dimension())
    throw DimensionMismatch("pca_project: column count does not match the fitted model");
  return (features.rowwise() - model.columnMeans) * model.components.transpose();
}

/// Maps projected rows back to the input space.
Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& projected);

// ---------------------------------------------------------------------------
// Classifiers

enum class ClassifierKind { Knn, GaussianNb, LinearSvm };

std::string_view to_string(ClassifierKind kind);
/// Accepts "knn", "nb" / "gaussian-nb", "svm" / "linear-svm".
ClassifierKind parse_classifier_kind(std::string_view text);

struct KnnParameters {
  int k = 1;
  /// Training rows in model space (standardized, then projected when PCA is on).
  Eigen::MatrixXd rows;
  std::vector<ClassLabel> labels;
};

struct GaussianNbParameters {
  /// Row 0 is gland, row 1 stroma.
  Eigen::Vector2d logPriors;
  Eigen::MatrixXd means;
  Eigen::MatrixXd variances;
};

struct LinearSvmParameters {
  Eigen::VectorXd weights;
  double bias = 0;
};

using ClassifierParameters = std::variant<KnnParameters, GaussianNbParameters, LinearSvmParameters>;

struct TrainSpec {
  ClassifierKind kind = ClassifierKind::LinearSvm;
  int k = 1;
  double lambda = 1e-3;
  int epochs = 200;
  std::uint64_t seed = 0;
  std::optional<PcaKeep> pca;
};

struct Prediction {
  ClassLabel label;
  /// knn: distance-weighted vote fraction of the winning label.
  /// nb: log-posterior(gland) - log-posterior(stroma).
  /// svm: signed margin, positive toward gland.
  double score;
};

struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::LinearSvm;
  Standardizer standardizer;
  std::optional<PcaModel> pca;
  std::optional<FeatureConfig> featureConfig;
  std::vector<std::string> columns;
  ClassifierParameters parameters;
  TrainSpec spec;
  Index trainingSamples = 0;

  Index input_dimension() const { return standardizer.dimension(); }
  /// Dimension after standardization and optional PCA.
  Index model_dimension() const { return pca ? pca->output_dimension() : input_dimension(); }

  Prediction predict(const Eigen::Ref<const Eigen::VectorXd>& features) const;
  /// Throws DataError when parameter shapes disagree with the column count.
  void validate() const;
};

/// Per-epoch regularized hinge objective, in model space, of the SVM solution
/// held after that epoch (the best epoch-averaged iterate so far).
struct TrainingTrace {
  std::vector<double> epochObjective;
};

ClassifierModel train_classifier(const Dataset& dataset, const TrainSpec& spec,
                                 TrainingTrace* trace = nullptr);

/// lambda/2 |w|^2 + mean hinge loss, labels gland = +1, stroma = -1.
double svm_objective(const LinearSvmParameters& svm, const Eigen::MatrixXd& rows,
                     std::span<const ClassLabel> labels, double lambda);

// ---------------------------------------------------------------------------
// Evaluation

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  void add(ClassLabel truth, ClassLabel predicted);
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// (TP + TN) / total; throws InvalidArgument for all-zero counts.
double classification_accuracy(const ConfusionCounts& counts);

struct KFold {
  int k;
};
struct Holdout {
  double trainFraction;
};
using CvProtocol = std::variant<KFold, Holdout>;

std::string describe(const CvProtocol& protocol);

struct FoldResult {
  std::vector<Index> validation;
  Index trainSize = 0;
  ConfusionCounts counts;
  double accuracy = 0;
};

struct CvReport {
  CvProtocol protocol;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double meanAccuracy = 0;
  ConfusionCounts pooled;
};

/// Deterministic Fisher-Yates permutation driven by mt19937_64.
std::vector<Index> seeded_permutation(Index n, std::uint64_t seed);

/// Stratified fold assignment: each class is shuffled, the classes are
/// concatenated (gland first) and dealt round-robin, so fold sizes differ by at
/// most one. Throws InvalidArgument when k exceeds the smallest class.
std::vector<std::vector<Index>> stratified_folds(std::span<const ClassLabel> labels, int k,
                                                 std::uint64_t seed);

struct HoldoutSplit {
  std::vector<Index> train;
  std::vector<Index> validation;
};

/// Per-class training counts by largest remainder around round(n * fraction).
HoldoutSplit stratified_holdout(std::span<const ClassLabel> labels, double trainFraction,
                                std::uint64_t seed);

CvReport cross_validate(const Dataset& dataset, const TrainSpec& spec, const CvProtocol& protocol,
                        std::uint64_t seed);

}  // namespace glandseg

#endif  // GLANDSEG_ML_HPP
