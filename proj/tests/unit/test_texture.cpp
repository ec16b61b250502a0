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

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "glandseg/texture.hpp"

namespace glandseg {
namespace {

// Reference co-occurrence counts: visit every pixel and its partner delta
// steps along the direction theta, with image rows growing downward. Diagonal
// offsets move delta pixels on both axes.
Eigen::MatrixXd brute_force_glcm(const GrayRaster& q, int levels, int delta, int degrees) {
  const double theta = degrees * std::numbers::pi / 180.0;
  const int dCol = delta * static_cast<int>(std::lround(std::cos(theta)));
  const int dRow = -delta * static_cast<int>(std::lround(std::sin(theta)));
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(levels, levels);
  for (Index r = 0; r < q.rows(); ++r)
    for (Index c = 0; c < q.cols(); ++c) {
      const Index r2 = r + dRow, c2 = c + dCol;
      if (r2 < 0 || c2 < 0 || r2 >= q.rows() || c2 >= q.cols()) continue;
      counts(q(r, c), q(r2, c2)) += 1;
    }
  return counts;
}

// Straight transcription of the textbook formulas, one feature per loop.
std::array<double, 8> reference_haralick(const Eigen::MatrixXd& counts) {
  const Eigen::MatrixXd p = counts / counts.sum();
  const Index n = p.rows();
  double contrast = 0, dissimilarity = 0, energy = 0, homogeneity = 0, entropy = 0;
  double muR = 0, muC = 0, varR = 0, varC = 0, cov = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double v = p(i, j), d = static_cast<double>(i - j);
      contrast += v * d * d;
      dissimilarity += v * std::abs(d);
      energy += v * v;
      homogeneity += v / (1 + d * d);
      if (v > 0) entropy -= v * std::log(v);
      muR += i * v;
      muC += j * v;
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      varR += (i - muR) * (i - muR) * p(i, j);
      varC += (j - muC) * (j - muC) * p(i, j);
      cov += (i - muR) * (j - muC) * p(i, j);
    }
  const double correlation = varR * varC == 0 ? 1.0 : cov / std::sqrt(varR * varC);
  return {contrast, correlation, energy, homogeneity, entropy, muR, std::sqrt(varR), dissimilarity};
}

GrayRaster raster(std::initializer_list<std::initializer_list<int>> rows) {
  GrayRaster out(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (int v : row) out(r, c++) = static_cast<std::uint8_t>(v);
    ++r;
  }
  return out;
}

TEST(Quantize, FloorMapping) {
  GrayRaster image(1, 4);
  image << 0, 128, 255, 31;
  const GrayImage q = quantize(image, 8);
  EXPECT_EQ(q.levels(), 8);
  EXPECT_EQ(q.values()(0, 0), 0);
  EXPECT_EQ(q.values()(0, 1), 4);
  EXPECT_EQ(q.values()(0, 2), 7);
  EXPECT_EQ(q.values()(0, 3), 0);
}

TEST(Quantize, MonotoneOverAllInputs) {
  GrayRaster ramp(1, 256);
  for (int v = 0; v < 256; ++v) ramp(0, v) = static_cast<std::uint8_t>(v);
  for (int levels : {2, 3, 8, 17, 256}) {
    const GrayRaster q = quantize(ramp, levels).values();
    for (int v = 1; v < 256; ++v) EXPECT_LE(q(0, v - 1), q(0, v));
    EXPECT_EQ(q(0, 255), levels - 1);
  }
}

TEST(Quantize, RejectsLevelCount) {
  const GrayRaster image = GrayRaster::Zero(2, 2);
  EXPECT_THROW(quantize(image, 1), InvalidArgument);
  EXPECT_THROW(quantize(image, 257), InvalidArgument);
}

TEST(Offset, DisplacementConvention) {
  EXPECT_EQ(Offset(2, Angle::Deg0).displacement(), (Displacement{0, 2}));
  EXPECT_EQ(Offset(2, Angle::Deg45).displacement(), (Displacement{-2, 2}));
  EXPECT_EQ(Offset(2, Angle::Deg90).displacement(), (Displacement{-2, 0}));
  EXPECT_EQ(Offset(2, Angle::Deg135).displacement(), (Displacement{-2, -2}));
  EXPECT_THROW(Offset::from_degrees(1, 30), InvalidArgument);
  EXPECT_THROW(Offset(0, Angle::Deg0), InvalidArgument);
}

TEST(Offset, StandardGridIsDistanceMajor) {
  const auto grid = standard_offset_grid();
  ASSERT_EQ(grid.size(), 20u);
  EXPECT_EQ(grid.front(), Offset(1, Angle::Deg0));
  EXPECT_EQ(grid[1], Offset(1, Angle::Deg45));
  EXPECT_EQ(grid[4], Offset(2, Angle::Deg0));
  EXPECT_EQ(grid.back(), Offset(16, Angle::Deg135));
}

TEST(Glcm, ConstantImageUnnormalized) {
  const GrayImage image(GrayRaster::Zero(2, 2), 4);
  const Glcm g = compute_glcm(image, Offset(1, Angle::Deg0), {.symmetric = false, .normalize = false});
  EXPECT_EQ(g.cells(0, 0), 2.0);
  EXPECT_EQ(g.cells.sum(), 2.0);
}

TEST(Glcm, HandEnumeratedPairs) {
  const GrayImage image(raster({{0, 1}, {2, 3}}), 4);
  const Glcm g = compute_glcm(image, Offset(1, Angle::Deg0));
  EXPECT_EQ(g.cells(0, 1), 0.5);
  EXPECT_EQ(g.cells(2, 3), 0.5);
  EXPECT_EQ(g.cells.sum(), 1.0);
}

TEST(Glcm, ClassicFourByFourSymmetricCounts) {
  const GrayImage image(raster({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 2, 2, 2}, {2, 2, 3, 3}}), 4);
  const Glcm g = compute_glcm(image, Offset(1, Angle::Deg0), {.symmetric = true, .normalize = false});
  Eigen::Matrix4d expected;
  expected << 4, 2, 1, 0, 2, 4, 0, 0, 1, 0, 6, 1, 0, 0, 1, 2;
  EXPECT_EQ(g.cells, Eigen::MatrixXd(expected));
}

TEST(Glcm, MatchesBruteForceOnAllStandardOffsets) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GrayImage image = quantize(testing::random_gray(23, 31, seed), 8);
    for (const Offset& offset : standard_offset_grid()) {
      const Eigen::MatrixXd expected = brute_force_glcm(image.values(), 8, offset.delta(), offset.degrees());
      if (expected.sum() == 0) {
        EXPECT_THROW(compute_glcm(image, offset), DegenerateInput);
        continue;
      }
      const Glcm g = compute_glcm(image, offset, {.symmetric = false, .normalize = false});
      EXPECT_EQ(g.cells, expected) << "delta " << offset.delta() << " theta " << offset.degrees();
    }
  }
}

TEST(Glcm, SymmetricAndNormalizedInvariants) {
  const GrayImage image = quantize(testing::random_gray(20, 20, 5), 8);
  const Glcm g = compute_glcm(image, Offset(2, Angle::Deg45), {.symmetric = true, .normalize = true});
  EXPECT_EQ(g.cells, Eigen::MatrixXd(g.cells.transpose()));
  EXPECT_NEAR(g.cells.sum(), 1.0, 1e-9);
  EXPECT_TRUE(g.normalized);
}

TEST(Glcm, NoPairsIsDegenerate) {
  const GrayImage image(GrayRaster::Zero(4, 4), 8);
  EXPECT_THROW(compute_glcm(image, Offset(4, Angle::Deg0)), DegenerateInput);
  EXPECT_THROW(compute_glcm(image, Offset(8, Angle::Deg90)), DegenerateInput);
}

TEST(Haralick, ConstantImageTrivialTuple) {
  const GrayImage image(GrayRaster::Constant(8, 8, 3), 8);
  const HaralickFeatures h = haralick_features(compute_glcm(image, Offset(1, Angle::Deg0)));
  EXPECT_EQ(h.contrast, 0.0);
  EXPECT_EQ(h.dissimilarity, 0.0);
  EXPECT_EQ(h.energy, 1.0);
  EXPECT_EQ(h.homogeneity, 1.0);
  EXPECT_EQ(h.entropy, 0.0);
  EXPECT_FALSE(std::signbit(h.entropy));
  EXPECT_EQ(h.correlation, 1.0);
  EXPECT_EQ(h.mean, 3.0);
  EXPECT_EQ(h.stdDev, 0.0);
}

TEST(Haralick, TwoCellExample) {
  const GrayImage image(raster({{0, 1}, {2, 3}}), 4);
  const HaralickFeatures h = haralick_features(compute_glcm(image, Offset(1, Angle::Deg0)));
  EXPECT_DOUBLE_EQ(h.contrast, 1.0);
  EXPECT_DOUBLE_EQ(h.energy, 0.5);
  EXPECT_DOUBLE_EQ(h.entropy, std::log(2.0));
  EXPECT_DOUBLE_EQ(h.dissimilarity, 1.0);
  EXPECT_DOUBLE_EQ(h.homogeneity, 0.5);
}

TEST(Haralick, MatchesReferenceEvaluator) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage image = quantize(testing::random_gray(16, 16, seed), 8);
    for (const Offset& offset : {Offset(1, Angle::Deg0), Offset(2, Angle::Deg135), Offset(4, Angle::Deg90)}) {
      const Glcm g = compute_glcm(image, offset, {.symmetric = false, .normalize = false});
      const auto expected = reference_haralick(g.cells);
      const auto actual = haralick_features(g).values();
      for (std::size_t i = 0; i < 8; ++i)
        EXPECT_NEAR(actual[i], expected[i], 1e-10) << HaralickFeatures::kNames[i];
    }
  }
}

TEST(Haralick, UnnormalizedInputIsNotMutated) {
  const GrayImage image = quantize(testing::random_gray(16, 16, 1), 8);
  const Glcm counts = compute_glcm(image, Offset(1, Angle::Deg0), {.symmetric = false, .normalize = false});
  const Glcm copy = counts;
  const HaralickFeatures a = haralick_features(counts);
  const HaralickFeatures b = haralick_features(compute_glcm(image, Offset(1, Angle::Deg0)));
  EXPECT_EQ(counts.cells, copy.cells);
  EXPECT_NEAR(a.entropy, b.entropy, 1e-12);
}

TEST(Haralick, Bounds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage image = quantize(testing::random_gray(12, 12, seed), 8);
    const HaralickFeatures h = haralick_features(compute_glcm(image, Offset(1, Angle::Deg45)));
    EXPECT_LE(h.energy, 1.0);
    EXPECT_LE(h.homogeneity, 1.0);
    EXPECT_LE(h.entropy, std::log(64.0));
    EXPECT_GE(h.correlation, -1.0 - 1e-12);
    EXPECT_LE(h.correlation, 1.0 + 1e-12);
  }
}

TEST(Lbp, ConstantImageAllBitsSet) {
  const GrayRaster image = GrayRaster::Constant(40, 40, 90);
  for (double r : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const LbpMap map = compute_lbp(image, r);
    EXPECT_EQ(map.borderMargin, static_cast<int>(std::ceil(r)));
    EXPECT_EQ(map.interior().rows(), 40 - 2 * map.borderMargin);
    EXPECT_TRUE((map.interior().array() == 255u).all()) << "r " << r;
  }
}

TEST(Lbp, SquareRingHandExample) {
  // Neighbours E, NE, N, NW, W, SW, S, SE = 6, 2, 7, 3, 1, 5, 4, 8 around a centre of 5.
  const GrayRaster image = raster({{3, 7, 2}, {1, 5, 6}, {5, 4, 8}});
  const LbpMap map = compute_lbp(image, 1.0, {.neighbors = 8, .sampling = LbpSampling::Square});
  EXPECT_EQ(map.codes(1, 1), 165u);
}

TEST(Lbp, CircularSamplingInterpolatesDiagonals) {
  // Same neighbourhood: the SW diagonal sample interpolates to 3.96 (< 5), so
  // bit 5 clears; every other bit agrees with the square ring.
  const GrayRaster image = raster({{3, 7, 2}, {1, 5, 6}, {5, 4, 8}});
  const LbpMap map = compute_lbp(image, 1.0);
  EXPECT_EQ(map.codes(1, 1), 133u);
}

TEST(Lbp, CodesBelowTwoToTheP) {
  const GrayRaster image = testing::random_gray(30, 30, 4);
  for (int p : {4, 8, 12}) {
    const LbpMap map = compute_lbp(image, 2.0, {.neighbors = p});
    EXPECT_TRUE((map.interior().array() < (1u << p)).all());
  }
}

TEST(Lbp, ShiftInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const GrayRaster image = testing::random_gray(24, 24, trial, 40, 200);
    const int shift = std::uniform_int_distribution<int>(-40, 55)(rng);
    const GrayRaster shifted = (image.cast<int>().array() + shift).cast<std::uint8_t>();
    for (double r : {1.0, 1.5, 2.0, 4.0}) EXPECT_EQ(compute_lbp(image, r).codes, compute_lbp(shifted, r).codes);
  }
}

TEST(Lbp, TooSmallForRadius) {
  EXPECT_THROW(compute_lbp(GrayRaster::Zero(4, 4), 2.0), Error);
  EXPECT_NO_THROW(compute_lbp(GrayRaster::Zero(5, 5), 2.0));
}

TEST(FirstOrder, ConstantConvention) {
  const FirstOrderStats s = first_order_stats(Eigen::Vector4d(5, 5, 5, 5));
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.stdDev, 0.0);
  EXPECT_EQ(s.skewness, 0.0);
  EXPECT_EQ(s.kurtosis, 0.0);
}

TEST(FirstOrder, HandComputedMoments) {
  const FirstOrderStats s = first_order_stats(Eigen::Vector4d(0, 0, 0, 1));
  EXPECT_DOUBLE_EQ(s.mean, 0.25);
  EXPECT_NEAR(s.stdDev, std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_NEAR(s.skewness, 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(s.kurtosis, 7.0 / 3.0, 1e-12);
}

TEST(FirstOrder, MonteCarloUniform) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd x(200000);
  for (Index i = 0; i < x.size(); ++i) x(i) = dist(rng);
  const FirstOrderStats s = first_order_stats(x);
  EXPECT_NEAR(s.mean, 0.5, 0.01);
  EXPECT_NEAR(s.stdDev, std::sqrt(1.0 / 12.0), 0.01);
  EXPECT_LT(std::abs(s.skewness), 0.1);
  EXPECT_NEAR(s.kurtosis, 1.8, 0.05);
}

TEST(FirstOrder, EmptyInput) { EXPECT_THROW(first_order_stats(Eigen::VectorXd()), InvalidArgument); }

TEST(Features, CombinedPresetColumns) {
  const FeatureConfig config = FeatureConfig::combined();
  const auto names = config.column_names();
  ASSERT_EQ(names.size(), 12u);
  EXPECT_EQ(names[0], "glcm_d1_a0_contrast");
  EXPECT_EQ(names[7], "glcm_d1_a0_dissimilarity");
  EXPECT_EQ(names[8], "lbp_r1_mean");
  EXPECT_EQ(names[11], "lbp_r1_kurtosis");
  const FeatureVector v = patch_features(testing::random_gray(35, 35, 2), config);
  EXPECT_EQ(v.names, names);
  EXPECT_EQ(v.values.size(), 12);
}

TEST(Features, GlcmPresetHas160Columns) {
  EXPECT_EQ(FeatureConfig::glcm_only().column_names().size(), 160u);
  EXPECT_EQ(FeatureConfig::lbp_only().column_names().size(), 20u);
}

TEST(Features, ConstantPatchTrivialValues) {
  const FeatureVector v = patch_features(GrayRaster::Constant(35, 35, 200), FeatureConfig::combined());
  EXPECT_EQ(v.values(0), 0.0);   // contrast
  EXPECT_EQ(v.values(1), 1.0);   // correlation
  EXPECT_EQ(v.values(2), 1.0);   // energy
  EXPECT_EQ(v.values(3), 1.0);   // homogeneity
  EXPECT_EQ(v.values(4), 0.0);   // entropy
  EXPECT_EQ(v.values(5), 6.0);   // mean level of 200 at L = 8
  EXPECT_EQ(v.values(8), 255.0);
  EXPECT_EQ(v.values(9), 0.0);
}

TEST(Features, StableAcrossRuns) {
  const GrayRaster patch = testing::random_gray(35, 35, 8);
  const FeatureVector a = patch_features(patch, FeatureConfig::combined());
  const FeatureVector b = patch_features(patch, FeatureConfig::combined());
  EXPECT_EQ(a.names, b.names);
  EXPECT_EQ(a.values, b.values);
}

TEST(Features, EmptyConfigRejected) {
  FeatureConfig config;
  EXPECT_THROW(config.validate(), InvalidArgument);
  EXPECT_THROW(patch_features(GrayRaster::Zero(35, 35), config), InvalidArgument);
}

TEST(Features, ConfigRecoveredFromColumnNames) {
  FeatureConfig config;
  config.glcmOffsets = {Offset(2, Angle::Deg45), Offset(16, Angle::Deg135)};
  config.lbpRadii = {1.5, 4};
  EXPECT_EQ(feature_config_from_columns(config.column_names()), config);
  EXPECT_EQ(feature_config_from_columns(FeatureConfig::glcm_only().column_names()), FeatureConfig::glcm_only());
  EXPECT_THROW(feature_config_from_columns({"glcm_d1_a0_contrast", "area"}), DataError);
}

TEST(WindowExtractor, MatchesPatchFeaturesOnCrops) {
  FeatureConfig config = FeatureConfig::combined();
  config.glcmOffsets.push_back(Offset(2, Angle::Deg135));
  config.lbpRadii.push_back(2.5);
  const GrayRaster image = testing::random_gray(70, 90, 12);
  const WindowFeatureExtractor extractor(image, config);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const Index size = std::uniform_int_distribution<Index>(9, 35)(rng);
    const Index top = std::uniform_int_distribution<Index>(0, image.rows() - size)(rng);
    const Index left = std::uniform_int_distribution<Index>(0, image.cols() - size)(rng);
    const Eigen::VectorXd expected = patch_features(GrayRaster(image.block(top, left, size, size)), config).values;
    const Eigen::VectorXd actual = extractor.extract(top, left, size, size);
    EXPECT_EQ(actual, expected) << "window " << top << "," << left << " size " << size;
  }
}

}  // namespace
}  // namespace glandseg
