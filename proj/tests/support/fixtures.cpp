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

#include "fixtures.hpp"

#include <atomic>
#include <random>

#include <unistd.h>

#include "glandseg/texture.hpp"

namespace glandseg::testing {

GrayRaster random_gray(Index rows, Index cols, std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(lo, hi);
  GrayRaster out(rows, cols);
  for (Index i = 0; i < out.size(); ++i) out.data()[i] = static_cast<std::uint8_t>(dist(rng));
  return out;
}

GrayRaster gland_texture(Index rows, Index cols, std::uint64_t seed) {
  // 5x5 box blur of noise keeps neighbouring pixels close.
  const GrayRaster noise = random_gray(rows + 4, cols + 4, seed, 70, 190);
  GrayRaster out(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      out(r, c) = static_cast<std::uint8_t>(noise.block(r, c, 5, 5).cast<int>().sum() / 25);
  return out;
}

GrayRaster stroma_texture(Index rows, Index cols, std::uint64_t seed) {
  return random_gray(rows, cols, seed, 20, 235);
}

Scene bi_texture_scene(Index size, std::uint64_t seed) {
  const GrayRaster gland = gland_texture(size, size, seed);
  const GrayRaster stroma = stroma_texture(size, size, seed ^ 0x9e3779b97f4a7c15ULL);
  Scene scene{GrayRaster(size, size), LabelMask(size, size, Label::Stroma)};
  const Index half = size / 2;
  scene.image.leftCols(half) = gland.leftCols(half);
  scene.image.rightCols(size - half) = stroma.rightCols(size - half);
  for (Index r = 0; r < size; ++r)
    for (Index c = 0; c < half; ++c) scene.truth.set(r, c, Label::Gland);
  return scene;
}

Dataset texture_window_dataset(const FeatureConfig& config, int perClass, int window, std::uint64_t seed) {
  constexpr Index kSource = 192;
  const GrayRaster gland = gland_texture(kSource, kSource, seed + 1);
  const GrayRaster stroma = stroma_texture(kSource, kSource, seed + 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pos(0, kSource - window);

  Dataset dataset;
  dataset.columns = config.column_names();
  dataset.featureConfig = config;
  dataset.features.resize(2 * perClass, static_cast<Index>(dataset.columns.size()));
  for (int i = 0; i < 2 * perClass; ++i) {
    const bool isGland = i < perClass;
    const GrayRaster& source = isGland ? gland : stroma;
    const Index top = pos(rng), left = pos(rng);
    const GrayRaster crop = source.block(top, left, window, window);
    dataset.features.row(i) = patch_features(crop, config).values.transpose();
    dataset.labels.push_back(isGland ? ClassLabel::Gland : ClassLabel::Stroma);
  }
  return dataset;
}

Dataset blob_dataset(Index n, Index dims, std::uint64_t seed, double separation) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset dataset;
  dataset.features.resize(n, dims);
  for (Index i = 0; i < n; ++i) {
    const bool isGland = i % 2 == 0;
    for (Index j = 0; j < dims; ++j)
      dataset.features(i, j) = noise(rng) + (isGland ? separation / 2 : -separation / 2);
    dataset.labels.push_back(isGland ? ClassLabel::Gland : ClassLabel::Stroma);
  }
  for (Index j = 0; j < dims; ++j) dataset.columns.push_back("x" + std::to_string(j));
  return dataset;
}

RgbImage gray_to_rgb(const GrayRaster& gray) {
  RgbImage rgb(gray.cols(), gray.rows());
  for (Index r = 0; r < gray.rows(); ++r)
    for (Index c = 0; c < gray.cols(); ++c)
      for (int ch = 0; ch < 3; ++ch) rgb.at(r, c, ch) = gray(r, c);
  return rgb;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("glandseg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace glandseg::testing
