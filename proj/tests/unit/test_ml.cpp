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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "glandseg/ml.hpp"

namespace glandseg {
namespace {

Dataset labelled(Eigen::MatrixXd features, std::vector<ClassLabel> labels) {
  Dataset d;
  d.features = std::move(features);
  d.labels = std::move(labels);
  for (Index j = 0; j < d.features.cols(); ++j) d.columns.push_back("f" + std::to_string(j));
  return d;
}

double training_accuracy(const ClassifierModel& model, const Dataset& d) {
  Index correct = 0;
  for (Index i = 0; i < d.size(); ++i)
    correct += model.predict(d.features.row(i).transpose()).label == d.labels[static_cast<std::size_t>(i)];
  return static_cast<double>(correct) / static_cast<double>(d.size());
}

ClassifierModel bare_model(ClassifierKind kind, Index dims, ClassifierParameters params) {
  ClassifierModel m;
  m.kind = kind;
  m.standardizer = Standardizer::identity(dims);
  for (Index j = 0; j < dims; ++j) m.columns.push_back("f" + std::to_string(j));
  m.parameters = std::move(params);
  m.spec.kind = kind;
  return m;
}

TEST(Labels, ParseAndPrint) {
  EXPECT_EQ(parse_class_label("gland"), ClassLabel::Gland);
  EXPECT_EQ(to_string(ClassLabel::Stroma), "stroma");
  EXPECT_THROW(parse_class_label("tumour"), DataError);
  EXPECT_EQ(parse_classifier_kind("nb"), ClassifierKind::GaussianNb);
  EXPECT_EQ(parse_classifier_kind("linear-svm"), ClassifierKind::LinearSvm);
  EXPECT_THROW(parse_classifier_kind("forest"), InvalidArgument);
}

TEST(Standardizer, ZeroVarianceColumnPassesThrough) {
  Eigen::MatrixXd x(3, 2);
  x << 2, 0, 2, 5, 2, 10;
  const Standardizer s = fit_standardizer(x);
  EXPECT_EQ(s.mean(0), 2.0);
  EXPECT_EQ(s.stdDev(0), 0.0);
  const Eigen::MatrixXd z = apply_standardizer(s, x);
  EXPECT_TRUE((z.col(0).array() == 0.0).all());
}

TEST(Standardizer, PopulationScaling) {
  Eigen::MatrixXd x(2, 1);
  x << 0, 10;
  const Eigen::MatrixXd z = apply_standardizer(fit_standardizer(x), x);
  EXPECT_DOUBLE_EQ(z(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(z(1, 0), 1.0);
}

TEST(Standardizer, FitDataIsCentredAndScaled) {
  const Dataset d = testing::blob_dataset(50, 5, 3);
  const Eigen::MatrixXd z = apply_standardizer(fit_standardizer(d.features), d.features);
  for (Index j = 0; j < z.cols(); ++j) {
    EXPECT_LT(std::abs(z.col(j).mean()), 1e-9);
    EXPECT_NEAR(std::sqrt((z.col(j).array() - z.col(j).mean()).square().mean()), 1.0, 1e-9);
  }
}

TEST(Standardizer, Preconditions) {
  EXPECT_THROW(fit_standardizer(Eigen::MatrixXd::Zero(1, 3)), Error);
  const Standardizer s = Standardizer::identity(3);
  EXPECT_THROW(apply_standardizer(s, Eigen::MatrixXd::Zero(2, 4)), DimensionMismatch);
}

TEST(Pca, LineDataFirstComponentIsDiagonal) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> t(0.0, 3.0), noise(0.0, 1e-3);
  Eigen::MatrixXd x(500, 2);
  for (Index i = 0; i < x.rows(); ++i) {
    const double v = t(rng);
    x.row(i) << v + noise(rng), v + noise(rng);
  }
  const PcaModel pca = pca_fit(x, ComponentCount{2});
  EXPECT_GT(pca.explainedVarianceRatio(0), 0.99);
  EXPECT_NEAR(std::abs(pca.components(0, 0)), 1 / std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(std::abs(pca.components(0, 1)), 1 / std::sqrt(2.0), 1e-4);
  EXPECT_GT(pca.components(0, 0) * pca.components(0, 1), 0.0);
}

TEST(Pca, ZeroVarianceDirectionHasZeroRatio) {
  Eigen::MatrixXd x = testing::blob_dataset(40, 3, 5).features;
  x.col(2).setConstant(4.0);
  const PcaModel pca = pca_fit(x, ComponentCount{3});
  EXPECT_EQ(pca.explainedVarianceRatio(2), 0.0);
}

TEST(Pca, OrthonormalSortedAndReconstructs) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd x(280, 12);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = n(rng) * (1 + (i % 12));
  const PcaModel pca = pca_fit(x, ComponentCount{12});
  const Eigen::MatrixXd gram = pca.components * pca.components.transpose();
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-9);
  for (Index i = 1; i < 12; ++i) EXPECT_LE(pca.explainedVarianceRatio(i), pca.explainedVarianceRatio(i - 1));
  EXPECT_LE(pca.explainedVarianceRatio.sum(), 1 + 1e-9);
  const Eigen::MatrixXd back = pca_reconstruct(pca, pca_project(pca, x));
  EXPECT_LE((back - x).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Pca, ProjectionIsUncorrelated) {
  const Eigen::MatrixXd x = testing::blob_dataset(120, 6, 9).features;
  const Eigen::MatrixXd y = pca_project(pca_fit(x, ComponentCount{6}), x);
  const Eigen::MatrixXd centred = y.rowwise() - y.colwise().mean();
  const Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(y.rows() - 1);
  const double trace = cov.trace();
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (i != j) EXPECT_LT(std::abs(cov(i, j)), 1e-6 * trace);
}

TEST(Pca, VarianceFractionAndRange) {
  const Eigen::MatrixXd x = testing::blob_dataset(60, 4, 2).features;
  const PcaModel pca = pca_fit(x, VarianceFraction{0.5});
  EXPECT_GE(pca.explainedVarianceRatio.sum(), 0.5);
  EXPECT_THROW(pca_fit(x, ComponentCount{5}), InvalidArgument);
  EXPECT_THROW(pca_fit(x, ComponentCount{0}), InvalidArgument);
  EXPECT_THROW(pca_fit(x, VarianceFraction{1.5}), InvalidArgument);
}

TEST(Train, BlobsReachTrainingAccuracy) {
  const Dataset d = testing::blob_dataset(200, 2, 4);
  for (ClassifierKind kind : {ClassifierKind::Knn, ClassifierKind::GaussianNb, ClassifierKind::LinearSvm}) {
    TrainSpec spec;
    spec.kind = kind;
    spec.seed = 1;
    EXPECT_GE(training_accuracy(train_classifier(d, spec), d), 0.99) << to_string(kind);
  }
}

TEST(Train, KnnSelfPrediction) {
  const Dataset d = testing::blob_dataset(60, 3, 8, 1.0);
  TrainSpec spec;
  spec.kind = ClassifierKind::Knn;
  EXPECT_EQ(training_accuracy(train_classifier(d, spec), d), 1.0);
}

TEST(Train, NaiveBayesBoundaryMatchesClosedForm) {
  // Equal priors and unit variances around +-2: the Bayes boundary is x = 0.
  constexpr Index kPerClass = 5000;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd x(2 * kPerClass, 1);
  std::vector<ClassLabel> labels;
  for (Index i = 0; i < 2 * kPerClass; ++i) {
    const bool gland = i < kPerClass;
    x(i, 0) = noise(rng) + (gland ? 2.0 : -2.0);
    labels.push_back(gland ? ClassLabel::Gland : ClassLabel::Stroma);
  }
  TrainSpec spec;
  spec.kind = ClassifierKind::GaussianNb;
  const ClassifierModel model = train_classifier(labelled(x, labels), spec);
  double lo = -2, hi = 2;
  for (int it = 0; it < 60; ++it) {
    const double mid = (lo + hi) / 2;
    (model.predict(Eigen::VectorXd::Constant(1, mid)).score >= 0 ? hi : lo) = mid;
  }
  const double standardError = std::sqrt(2.0 / kPerClass) / 2;
  EXPECT_LT(std::abs(hi), 3 * standardError);
}

TEST(Train, SvmIsSeededAndItsObjectiveNeverIncreases) {
  const Dataset d = testing::blob_dataset(100, 3, 6);
  TrainSpec spec;
  spec.seed = 42;
  TrainingTrace trace;
  const ClassifierModel a = train_classifier(d, spec, &trace);
  const ClassifierModel b = train_classifier(d, spec);
  EXPECT_EQ(std::get<LinearSvmParameters>(a.parameters).weights, std::get<LinearSvmParameters>(b.parameters).weights);
  ASSERT_EQ(trace.epochObjective.size(), 200u);
  for (std::size_t i = 1; i < trace.epochObjective.size(); ++i)
    EXPECT_LE(trace.epochObjective[i], trace.epochObjective[i - 1]);
  const auto& svm = std::get<LinearSvmParameters>(a.parameters);
  const Eigen::MatrixXd z = apply_standardizer(a.standardizer, d.features);
  EXPECT_DOUBLE_EQ(svm_objective(svm, z, d.labels, spec.lambda), trace.epochObjective.back());
}

TEST(Train, RescalingFeaturesLeavesLabelsUnchanged) {
  const Dataset d = testing::blob_dataset(80, 4, 10, 2.0);
  Dataset scaled = d;
  scaled.features *= 37.5;
  for (ClassifierKind kind : {ClassifierKind::Knn, ClassifierKind::GaussianNb, ClassifierKind::LinearSvm}) {
    TrainSpec spec;
    spec.kind = kind;
    spec.k = 3;
    const ClassifierModel a = train_classifier(d, spec);
    const ClassifierModel b = train_classifier(scaled, spec);
    for (Index i = 0; i < d.size(); ++i)
      EXPECT_EQ(a.predict(d.features.row(i).transpose()).label, b.predict(scaled.features.row(i).transpose()).label)
          << to_string(kind) << " row " << i;
  }
}

TEST(Train, PcaIsEmbedded) {
  const Dataset d = testing::blob_dataset(80, 6, 12);
  TrainSpec spec;
  spec.pca = ComponentCount{3};
  const ClassifierModel m = train_classifier(d, spec);
  ASSERT_TRUE(m.pca.has_value());
  EXPECT_EQ(m.model_dimension(), 3);
  EXPECT_EQ(std::get<LinearSvmParameters>(m.parameters).weights.size(), 3);
  EXPECT_GE(training_accuracy(m, d), 0.99);
}

TEST(Train, Preconditions) {
  Dataset single = testing::blob_dataset(10, 2, 1);
  std::fill(single.labels.begin(), single.labels.end(), ClassLabel::Gland);
  EXPECT_THROW(train_classifier(single, {}), DegenerateInput);
  TrainSpec bad;
  bad.lambda = 0;
  EXPECT_THROW(train_classifier(testing::blob_dataset(10, 2, 1), bad), InvalidArgument);
}

TEST(Predict, SvmMarginByInspection) {
  const ClassifierModel m =
      bare_model(ClassifierKind::LinearSvm, 2, LinearSvmParameters{Eigen::Vector2d(1, 0), 0.0});
  const Prediction p = m.predict(Eigen::Vector2d(3, 5));
  EXPECT_EQ(p.label, ClassLabel::Gland);
  EXPECT_EQ(p.score, 3.0);
  EXPECT_EQ(m.predict(Eigen::Vector2d(-1, 5)).label, ClassLabel::Stroma);
  EXPECT_THROW(m.predict(Eigen::Vector3d(1, 2, 3)), DimensionMismatch);
}

TEST(Predict, KnnMajorityOfThree) {
  KnnParameters knn;
  knn.k = 3;
  knn.rows.resize(4, 1);
  knn.rows << 0.0, 0.1, 0.2, 5.0;
  knn.labels = {ClassLabel::Gland, ClassLabel::Stroma, ClassLabel::Gland, ClassLabel::Stroma};
  const ClassifierModel m = bare_model(ClassifierKind::Knn, 1, knn);
  EXPECT_EQ(m.predict(Eigen::VectorXd::Constant(1, 0.1)).label, ClassLabel::Gland);
}

TEST(Predict, KnnTieGoesToGland) {
  KnnParameters knn;
  knn.k = 2;
  knn.rows.resize(2, 1);
  knn.rows << -1.0, 1.0;
  knn.labels = {ClassLabel::Stroma, ClassLabel::Gland};
  const ClassifierModel m = bare_model(ClassifierKind::Knn, 1, knn);
  EXPECT_EQ(m.predict(Eigen::VectorXd::Zero(1)).label, ClassLabel::Gland);
}

TEST(Predict, NaiveBayesMidpointTieGoesToGland) {
  GaussianNbParameters nb;
  nb.logPriors = Eigen::Vector2d::Constant(std::log(0.5));
  nb.means.resize(2, 1);
  nb.means << 1.0, -1.0;
  nb.variances = Eigen::MatrixXd::Ones(2, 1);
  const ClassifierModel m = bare_model(ClassifierKind::GaussianNb, 1, nb);
  const Prediction p = m.predict(Eigen::VectorXd::Zero(1));
  EXPECT_EQ(p.score, 0.0);
  EXPECT_EQ(p.label, ClassLabel::Gland);
}

TEST(Accuracy, Examples) {
  EXPECT_EQ(classification_accuracy({10, 10, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(classification_accuracy({8, 2, 1, 1}), 10.0 / 12.0);
  EXPECT_EQ(classification_accuracy({0, 0, 5, 5}), 0.0);
  EXPECT_THROW(classification_accuracy({}), InvalidArgument);
}

TEST(CrossValidation, SeededPermutation) {
  const auto p = seeded_permutation(50, 3);
  EXPECT_EQ(p, seeded_permutation(50, 3));
  EXPECT_NE(p, seeded_permutation(50, 4));
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (Index i = 0; i < 50; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
}

TEST(CrossValidation, TwentyFoldsOfFourteen) {
  const Dataset d = testing::blob_dataset(280, 3, 1);
  const auto folds = stratified_folds(d.labels, 20, 5);
  ASSERT_EQ(folds.size(), 20u);
  std::set<Index> seen;
  for (const auto& fold : folds) {
    EXPECT_EQ(fold.size(), 14u);
    EXPECT_EQ(std::count_if(fold.begin(), fold.end(),
                            [&](Index i) { return d.labels[static_cast<std::size_t>(i)] == ClassLabel::Gland; }),
              7);
    for (Index i : fold) EXPECT_TRUE(seen.insert(i).second) << "sample " << i << " validated twice";
  }
  EXPECT_EQ(seen.size(), 280u);
  EXPECT_EQ(folds, stratified_folds(d.labels, 20, 5));
}

TEST(CrossValidation, HoldoutSixtyForty) {
  const Dataset d = testing::blob_dataset(280, 3, 1);
  const HoldoutSplit split = stratified_holdout(d.labels, 0.6, 2);
  EXPECT_EQ(split.train.size(), 168u);
  EXPECT_EQ(split.validation.size(), 112u);
  std::vector<Index> all = split.train;
  all.insert(all.end(), split.validation.begin(), split.validation.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  EXPECT_THROW(stratified_holdout(d.labels, 1.0, 2), InvalidArgument);
  EXPECT_THROW(stratified_holdout(d.labels, 0.0, 2), InvalidArgument);
}

TEST(CrossValidation, InfeasibleStratification) {
  Dataset d = testing::blob_dataset(20, 2, 1);
  d.labels.assign(20, ClassLabel::Stroma);
  d.labels[0] = d.labels[1] = ClassLabel::Gland;
  EXPECT_THROW(stratified_folds(d.labels, 3, 0), InvalidArgument);
}

TEST(CrossValidation, ReportArithmetic) {
  const Dataset d = testing::blob_dataset(280, 3, 1, 1.5);
  TrainSpec spec;
  spec.kind = ClassifierKind::GaussianNb;
  const CvReport report = cross_validate(d, spec, KFold{20}, 9);
  ASSERT_EQ(report.folds.size(), 20u);
  double sum = 0;
  ConfusionCounts pooled;
  for (const FoldResult& f : report.folds) {
    EXPECT_EQ(f.validation.size(), 14u);
    EXPECT_EQ(f.trainSize, 266);
    EXPECT_DOUBLE_EQ(f.accuracy, classification_accuracy(f.counts));
    sum += f.accuracy;
    pooled += f.counts;
  }
  EXPECT_NEAR(report.meanAccuracy, sum / 20, 1e-12);
  EXPECT_EQ(report.pooled, pooled);
  EXPECT_EQ(pooled.total(), 280u);

  const CvReport again = cross_validate(d, spec, KFold{20}, 9);
  EXPECT_EQ(again.meanAccuracy, report.meanAccuracy);
  EXPECT_EQ(describe(report.protocol), "kfold:20");
}

TEST(CrossValidation, SeparableDataKnnIsPerfect) {
  const Dataset d = testing::blob_dataset(100, 2, 3, 12.0);
  TrainSpec spec;
  spec.kind = ClassifierKind::Knn;
  EXPECT_EQ(cross_validate(d, spec, KFold{10}, 1).meanAccuracy, 1.0);
  const CvReport holdout = cross_validate(d, spec, Holdout{0.6}, 1);
  ASSERT_EQ(holdout.folds.size(), 1u);
  EXPECT_EQ(holdout.folds[0].validation.size(), 40u);
}

}  // namespace
}  // namespace glandseg
