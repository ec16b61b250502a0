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
#include <thread>
#include <vector>

#include "glandseg/segmentation.hpp"

namespace glandseg {
namespace {

Index mirror_index(Index i, Index n) {
  const Index period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

}  // namespace

void SegmentationConfig::validate() const {
  if (windowSize < 3 || windowSize % 2 == 0) throw InvalidArgument("segmentation: window size must be odd and >= 3");
  if (stride < 1) throw InvalidArgument("segmentation: stride must be >= 1");
  if (workers < 1) throw InvalidArgument("segmentation: workers must be >= 1");
  if (featureConfig) featureConfig->validate();
}

GrayRaster mirror_pad(const GrayRaster& image, Index pad) {
  if (pad < 0) throw InvalidArgument("mirror_pad: negative padding");
  const Index rows = image.rows();
  const Index cols = image.cols();
  GrayRaster out(rows + 2 * pad, cols + 2 * pad);
  for (Index r = 0; r < out.rows(); ++r) {
    const Index sr = mirror_index(r - pad, rows);
    for (Index c = 0; c < out.cols(); ++c) out(r, c) = image(sr, mirror_index(c - pad, cols));
  }
  return out;
}

LabelMask segment_image(const GrayRaster& image, const ClassifierModel& model,
                        const SegmentationConfig& config, SegmentationStats* stats) {
  config.validate();
  if (image.rows() < 1 || image.cols() < 1) throw DegenerateInput("segment_image: empty image");
  if (!model.featureConfig)
    throw InvalidArgument("segment_image: model carries no texture feature config");
  if (config.featureConfig && !(*config.featureConfig == *model.featureConfig))
    throw InvalidArgument("segment_image: segmentation feature config differs from the model's");
  const FeatureConfig& features = *model.featureConfig;
  if (static_cast<Index>(features.column_count()) != model.input_dimension())
    throw InvalidArgument("segment_image: model dimension does not match its feature config");
  if (config.windowSize - 2 * features.lbp_margin() < 1)
    throw InvalidArgument("segment_image: window too small for the largest LBP radius");

  const Index window = config.windowSize;
  const Index half = window / 2;
  const WindowFeatureExtractor extractor(mirror_pad(image, half), features);

  const Index rows = image.rows();
  const Index cols = image.cols();
  const Index stride = config.stride;
  const Index gridRows = (rows + stride - 1) / stride;
  const Index gridCols = (cols + stride - 1) / stride;

  LabelMask mask(cols, rows);
  // Each worker owns whole grid rows, so writes never overlap.
  const auto work = [&](Index firstGridRow, Index step) {
    Eigen::VectorXd feature(static_cast<Index>(features.column_count()));
    for (Index gr = firstGridRow; gr < gridRows; gr += step) {
      const Index r = gr * stride;
      for (Index gc = 0; gc < gridCols; ++gc) {
        const Index c = gc * stride;
        // Window centered on (r, c) starts at (r, c) in padded coordinates.
        extractor.extract(r, c, window, window, feature);
        const Label label = model.predict(feature).label == ClassLabel::Gland ? Label::Gland : Label::Stroma;
        for (Index br = r; br < std::min(r + stride, rows); ++br)
          for (Index bc = c; bc < std::min(c + stride, cols); ++bc) mask.set(br, bc, label);
      }
    }
  };

  const Index workers = std::min<Index>(config.workers, gridRows);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> threads;
      for (Index w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            work(w, workers);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  if (stats) stats->windowsEvaluated = static_cast<std::size_t>(gridRows * gridCols);
  return mask;
}

}  // namespace glandseg
