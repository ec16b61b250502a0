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
#include <numeric>
#include <random>

#include "glandseg/ml.hpp"

namespace glandseg {
namespace {

void shuffle_in_place(std::vector<Index>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<Index> members_of(std::span<const ClassLabel> labels, ClassLabel label) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) out.push_back(static_cast<Index>(i));
  return out;
}

FoldResult run_fold(const Dataset& dataset, const TrainSpec& spec, const std::vector<Index>& train,
                    std::vector<Index> validation) {
  const ClassifierModel model = train_classifier(dataset.subset(train), spec);
  FoldResult fold;
  fold.trainSize = static_cast<Index>(train.size());
  for (Index i : validation) {
    const Prediction p = model.predict(dataset.features.row(i).transpose());
    fold.counts.add(dataset.labels[static_cast<std::size_t>(i)], p.label);
  }
  fold.accuracy = classification_accuracy(fold.counts);
  fold.validation = std::move(validation);
  return fold;
}

}  // namespace

std::vector<Index> seeded_permutation(Index n, std::uint64_t seed) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  shuffle_in_place(order, rng);
  return order;
}

std::string describe(const CvProtocol& protocol) {
  if (const auto* kfold = std::get_if<KFold>(&protocol)) return "kfold:" + std::to_string(kfold->k);
  char buf[64];
  std::snprintf(buf, sizeof buf, "holdout:%g", std::get<Holdout>(protocol).trainFraction);
  return buf;
}

std::vector<std::vector<Index>> stratified_folds(std::span<const ClassLabel> labels, int k,
                                                 std::uint64_t seed) {
  auto gland = members_of(labels, ClassLabel::Gland);
  auto stroma = members_of(labels, ClassLabel::Stroma);
  const auto smallest = static_cast<int>(std::min(gland.size(), stroma.size()));
  if (k < 2) throw InvalidArgument("stratified_folds: k must be >= 2");
  if (k > smallest)
    throw InvalidArgument("stratified_folds: k = " + std::to_string(k) + " exceeds the smallest class (" +
                          std::to_string(smallest) + " samples)");

  std::mt19937_64 rng(seed);
  shuffle_in_place(gland, rng);
  shuffle_in_place(stroma, rng);
  std::vector<Index> dealt = gland;
  dealt.insert(dealt.end(), stroma.begin(), stroma.end());

  std::vector<std::vector<Index>> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < dealt.size(); ++i) folds[i % static_cast<std::size_t>(k)].push_back(dealt[i]);
  return folds;
}

HoldoutSplit stratified_holdout(std::span<const ClassLabel> labels, double trainFraction,
                                std::uint64_t seed) {
  if (!(trainFraction > 0 && trainFraction < 1))
    throw InvalidArgument("stratified_holdout: train fraction must be in (0, 1)");
  std::array<std::vector<Index>, 2> classes = {members_of(labels, ClassLabel::Gland),
                                               members_of(labels, ClassLabel::Stroma)};
  const auto n = static_cast<double>(labels.size());
  const auto target = static_cast<std::size_t>(std::floor(n * trainFraction + 0.5));

  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact = static_cast<double>(classes[c].size()) * trainFraction;
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += quota[c];
  }
  // Largest remainder first; equal remainders favour gland.
  const int first = remainder[1] > remainder[0] ? 1 : 0;
  for (int step = 0; assigned < target && step < 2; ++step) {
    quota[(first + step) % 2] += 1;
    ++assigned;
  }
  for (int c = 0; c < 2; ++c) {
    if (quota[c] < 1 || quota[c] >= classes[c].size())
      throw InvalidArgument("stratified_holdout: fraction leaves a class without training or validation samples");
  }

  std::mt19937_64 rng(seed);
  HoldoutSplit split;
  for (int c = 0; c < 2; ++c) {
    shuffle_in_place(classes[c], rng);
    split.train.insert(split.train.end(), classes[c].begin(), classes[c].begin() + static_cast<std::ptrdiff_t>(quota[c]));
    split.validation.insert(split.validation.end(), classes[c].begin() + static_cast<std::ptrdiff_t>(quota[c]),
                            classes[c].end());
  }
  return split;
}

CvReport cross_validate(const Dataset& dataset, const TrainSpec& spec, const CvProtocol& protocol,
                        std::uint64_t seed) {
  dataset.validate();
  CvReport report;
  report.protocol = protocol;
  report.seed = seed;

  if (const auto* kfold = std::get_if<KFold>(&protocol)) {
    const auto folds = stratified_folds(dataset.labels, kfold->k, seed);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<Index> train;
      for (std::size_t g = 0; g < folds.size(); ++g)
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      std::sort(train.begin(), train.end());
      report.folds.push_back(run_fold(dataset, spec, train, folds[f]));
    }
  } else {
    HoldoutSplit split = stratified_holdout(dataset.labels, std::get<Holdout>(protocol).trainFraction, seed);
    std::sort(split.train.begin(), split.train.end());
    report.folds.push_back(run_fold(dataset, spec, split.train, std::move(split.validation)));
  }

  double sum = 0;
  for (const FoldResult& fold : report.folds) {
    sum += fold.accuracy;
    report.pooled += fold.counts;
  }
  report.meanAccuracy = sum / static_cast<double>(report.folds.size());
  return report;
}

}  // namespace glandseg
