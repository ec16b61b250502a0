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

#include <random>

#include "fixtures.hpp"
#include "glandseg/metrics.hpp"
#include "glandseg/segmentation.hpp"

namespace glandseg {
namespace {

ClassifierModel texture_model(const FeatureConfig& config, std::uint64_t seed = 7) {
  TrainSpec spec;
  spec.seed = seed;
  return train_classifier(testing::texture_window_dataset(config, 40, 35, seed), spec);
}

// Reflection oracle: the line is tiled with alternating forward and reversed
// copies of the source, the forward copy sitting at block 0.
Index tiled_source(Index i, Index n) {
  const Index block = i >= 0 ? i / n : -((-i + n - 1) / n);
  const Index within = i - block * n;
  return block % 2 == 0 ? within : n - 1 - within;
}

TEST(MirrorPad, MatchesTiledReflection) {
  for (Index rows : {1, 2, 5}) {
    for (Index cols : {1, 3, 4}) {
      const GrayRaster image = testing::random_gray(rows, cols, static_cast<std::uint64_t>(rows * 10 + cols));
      for (Index pad : {0, 1, 2, 7, 13}) {
        const GrayRaster padded = mirror_pad(image, pad);
        ASSERT_EQ(padded.rows(), rows + 2 * pad);
        for (Index r = 0; r < padded.rows(); ++r)
          for (Index c = 0; c < padded.cols(); ++c)
            ASSERT_EQ(padded(r, c), image(tiled_source(r - pad, rows), tiled_source(c - pad, cols)))
                << rows << "x" << cols << " pad " << pad << " at " << r << "," << c;
      }
    }
  }
}

TEST(MirrorPad, EdgeRepeatingExample) {
  GrayRaster row(1, 3);
  row << 1, 2, 3;
  GrayRaster expected(1, 7);
  expected << 2, 1, 1, 2, 3, 3, 2;
  EXPECT_EQ(mirror_pad(row, 2).row(2), expected);
}

TEST(Config, Validation) {
  SegmentationConfig c;
  EXPECT_NO_THROW(c.validate());
  c.windowSize = 34;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.windowSize = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.stride = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.workers = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Segment, FullSizeWindowCount) {
  const ClassifierModel model = texture_model(FeatureConfig::combined());
  const auto scene = testing::bi_texture_scene(384, 3);
  SegmentationStats stats;
  const LabelMask mask = segment_image(scene.image, model, {}, &stats);
  EXPECT_EQ(mask.width(), 384);
  EXPECT_EQ(mask.height(), 384);
  EXPECT_EQ(stats.windowsEvaluated, 147456u);
  const SegmentationReport report = evaluate(mask, scene.truth);
  EXPECT_GE(report.classes[0].dice, 0.9);
  EXPECT_GE(report.classes[1].dice, 0.9);
}

TEST(Segment, ConstantImageIsAllGland) {
  // Gland samples are flat windows, stroma samples are noise.
  const FeatureConfig config = FeatureConfig::combined();
  Dataset d;
  d.columns = config.column_names();
  d.featureConfig = config;
  d.features.resize(40, 12);
  for (int i = 0; i < 40; ++i) {
    const bool gland = i < 20;
    const GrayRaster window =
        gland ? GrayRaster(GrayRaster::Constant(35, 35, static_cast<std::uint8_t>(20 + 10 * i)))
              : testing::random_gray(35, 35, static_cast<std::uint64_t>(i));
    d.features.row(i) = patch_features(window, config).values.transpose();
    d.labels.push_back(gland ? ClassLabel::Gland : ClassLabel::Stroma);
  }
  const ClassifierModel model = train_classifier(d, {});
  const LabelMask mask = segment_image(GrayRaster::Constant(50, 60, 133), model, {});
  EXPECT_EQ(mask, LabelMask(60, 50, Label::Gland));
}

TEST(Segment, StrideKeepsDimensionsAndFillsBlocks) {
  const ClassifierModel model = texture_model(FeatureConfig::combined());
  const auto scene = testing::bi_texture_scene(64, 5);
  const GrayRaster image = scene.image.topLeftCorner(61, 47);
  SegmentationConfig dense;
  const LabelMask full = segment_image(image, model, dense);
  std::size_t fullWindows = 61 * 47;
  for (int stride : {2, 3, 5}) {
    SegmentationConfig config;
    config.stride = stride;
    SegmentationStats stats;
    const LabelMask mask = segment_image(image, model, config, &stats);
    ASSERT_EQ(mask.width(), 47);
    ASSERT_EQ(mask.height(), 61);
    const std::size_t expected = static_cast<std::size_t>(((61 + stride - 1) / stride) * ((47 + stride - 1) / stride));
    EXPECT_EQ(stats.windowsEvaluated, expected);
    if (stride == 2) EXPECT_LE(stats.windowsEvaluated, fullWindows / 4 + (61 + 47 + 1));
    for (Index r = 0; r < 61; ++r)
      for (Index c = 0; c < 47; ++c) {
        const Index ar = r - r % stride, ac = c - c % stride;
        ASSERT_EQ(mask(r, c), mask(ar, ac));
        ASSERT_EQ(mask(ar, ac), full(ar, ac));
      }
  }
}

TEST(Segment, WorkerCountDoesNotChangeTheMask) {
  const ClassifierModel model = texture_model(FeatureConfig::combined());
  const auto scene = testing::bi_texture_scene(96, 8);
  SegmentationConfig one, many;
  many.workers = 3;
  EXPECT_EQ(segment_image(scene.image, model, one), segment_image(scene.image, model, many));
  many.stride = 4;
  one.stride = 4;
  EXPECT_EQ(segment_image(scene.image, model, one), segment_image(scene.image, model, many));
}

TEST(Segment, MirroredImageGivesMirroredMask) {
  // Symmetric GLCM at 0 and 90 degrees is unchanged by a left-right flip.
  FeatureConfig config;
  config.glcmOffsets = {Offset(1, Angle::Deg0), Offset(1, Angle::Deg90)};
  config.glcm.symmetric = true;
  const ClassifierModel model = texture_model(config, 11);
  const auto scene = testing::bi_texture_scene(48, 2);
  const GrayRaster image = scene.image.topRows(40);
  const GrayRaster flipped = image.rowwise().reverse();
  SegmentationConfig seg;
  seg.windowSize = 15;
  const LabelMask a = segment_image(image, model, seg);
  const LabelMask b = segment_image(flipped, model, seg);
  EXPECT_EQ(LabelMask(GrayRaster(a.raw().rowwise().reverse())), b);
}

TEST(Segment, ConfigAndModelMustAgree) {
  const ClassifierModel model = texture_model(FeatureConfig::combined());
  SegmentationConfig config;
  config.featureConfig = FeatureConfig::lbp_only({1});
  EXPECT_THROW(segment_image(GrayRaster::Zero(40, 40), model, config), InvalidArgument);
  ClassifierModel bare = model;
  bare.featureConfig.reset();
  EXPECT_THROW(segment_image(GrayRaster::Zero(40, 40), bare, {}), InvalidArgument);
  config.featureConfig = FeatureConfig::combined();
  EXPECT_NO_THROW(segment_image(GrayRaster::Zero(8, 8), model, config));
}

TEST(Overlay, AlphaZeroIsIdentity) {
  const RgbImage image = testing::gray_to_rgb(testing::random_gray(9, 7, 1));
  const LabelMask mask(GrayRaster((testing::random_gray(9, 7, 2, 0, 2))));
  EXPECT_EQ(render_overlay(image, mask, 0.0), image);
}

TEST(Overlay, FullAlphaStromaIsPink) {
  const RgbImage out = render_overlay(testing::gray_to_rgb(testing::random_gray(4, 5, 3)),
                                      LabelMask(5, 4, Label::Stroma), 1.0);
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 5; ++c) {
      EXPECT_EQ(out.at(r, c, 0), 255);
      EXPECT_EQ(out.at(r, c, 1), 192);
      EXPECT_EQ(out.at(r, c, 2), 203);
    }
}

TEST(Overlay, HalfAlphaGlandOverWhite) {
  const RgbImage white(1, 1, 255);
  const RgbImage out = render_overlay(white, LabelMask(1, 1, Label::Gland), 0.5);
  EXPECT_EQ(out.at(0, 0, 0), 191);
  EXPECT_EQ(out.at(0, 0, 1), 191);
  EXPECT_EQ(out.at(0, 0, 2), 191);
}

TEST(Overlay, IgnoreUntouchedAndShapesChecked) {
  const RgbImage image = testing::gray_to_rgb(testing::random_gray(3, 3, 4));
  EXPECT_EQ(render_overlay(image, LabelMask(3, 3, Label::Ignore), 0.8), image);
  EXPECT_THROW(render_overlay(image, LabelMask(3, 4), 0.5), DimensionMismatch);
  EXPECT_THROW(render_overlay(image, LabelMask(3, 3), 1.5), InvalidArgument);
}

}  // namespace
}  // namespace glandseg
