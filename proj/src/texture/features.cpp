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
#include <charconv>
#include <cstdio>
#include <map>

#include "glandseg/texture.hpp"

namespace glandseg {
namespace {

std::string format_radius(double r) {
  char buf[32];
  if (r == std::floor(r)) {
    std::snprintf(buf, sizeof buf, "%d", static_cast<int>(r));
  } else {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r);
    *end = '\0';
  }
  return buf;
}

std::string glcm_prefix(const Offset& o) {
  return "glcm_d" + std::to_string(o.delta()) + "_a" + std::to_string(o.degrees()) + "_";
}

std::string lbp_prefix(double r) { return "lbp_r" + format_radius(r) + "_"; }

}  // namespace

FeatureConfig FeatureConfig::combined() {
  FeatureConfig c;
  c.glcmOffsets = {Offset(1, Angle::Deg0)};
  c.lbpRadii = {1};
  return c;
}

FeatureConfig FeatureConfig::glcm_only(std::vector<Offset> offsets) {
  FeatureConfig c;
  c.glcmOffsets = std::move(offsets);
  return c;
}

FeatureConfig FeatureConfig::lbp_only(std::vector<double> radii) {
  FeatureConfig c;
  c.lbpRadii = std::move(radii);
  return c;
}

void FeatureConfig::validate() const {
  if (glcmOffsets.empty() && lbpRadii.empty())
    throw InvalidArgument("FeatureConfig: no GLCM offsets and no LBP radii");
  if (levels < 2 || levels > 256) throw InvalidArgument("FeatureConfig: levels must be in [2, 256]");
  for (double r : lbpRadii)
    if (!(r > 0) || !std::isfinite(r)) throw InvalidArgument("FeatureConfig: LBP radius must be positive");
  if (lbp.neighbors < 1 || lbp.neighbors > 32)
    throw InvalidArgument("FeatureConfig: LBP neighbors must be in [1, 32]");
}

std::vector<std::string> FeatureConfig::column_names() const {
  std::vector<std::string> names;
  names.reserve(column_count());
  for (const Offset& o : glcmOffsets)
    for (std::string_view f : HaralickFeatures::kNames) names.push_back(glcm_prefix(o) + std::string(f));
  for (double r : lbpRadii)
    for (std::string_view f : FirstOrderStats::kNames) names.push_back(lbp_prefix(r) + std::string(f));
  return names;
}

int FeatureConfig::lbp_margin() const {
  int margin = 0;
  for (double r : lbpRadii) margin = std::max(margin, glandseg::lbp_margin(r));
  return margin;
}

FeatureConfig feature_config_from_columns(const std::vector<std::string>& columns) {
  FeatureConfig config;
  std::size_t i = 0;
  const auto fail = [&](const std::string& why) {
    throw DataError("feature columns: " + why + " at column " + std::to_string(i + 1) +
                    (i < columns.size() ? " ('" + columns[i] + "')" : ""));
  };
  while (i < columns.size() && columns[i].starts_with("glcm_")) {
    int delta = 0, degrees = 0;
    char tail[64] = {};
    if (std::sscanf(columns[i].c_str(), "glcm_d%d_a%d_%63s", &delta, &degrees, tail) != 3)
      fail("malformed GLCM column name");
    Offset offset = [&] {
      try {
        return Offset::from_degrees(delta, degrees);
      } catch (const InvalidArgument& e) {
        fail(e.what());
      }
      return Offset(1, Angle::Deg0);
    }();
    for (std::string_view f : HaralickFeatures::kNames) {
      if (i >= columns.size() || columns[i] != glcm_prefix(offset) + std::string(f))
        fail("expected " + glcm_prefix(offset) + std::string(f));
      ++i;
    }
    config.glcmOffsets.push_back(offset);
  }
  while (i < columns.size()) {
    const std::string& name = columns[i];
    if (!name.starts_with("lbp_r")) fail("unknown feature family");
    const auto underscore = name.find('_', 5);
    if (underscore == std::string::npos) fail("malformed LBP column name");
    double radius = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 5, name.data() + underscore, radius);
    if (ec != std::errc() || ptr != name.data() + underscore || !(radius > 0)) fail("malformed LBP radius");
    for (std::string_view f : FirstOrderStats::kNames) {
      if (i >= columns.size() || columns[i] != lbp_prefix(radius) + std::string(f))
        fail("expected " + lbp_prefix(radius) + std::string(f));
      ++i;
    }
    config.lbpRadii.push_back(radius);
  }
  config.validate();
  return config;
}

WindowFeatureExtractor::WindowFeatureExtractor(const GrayRaster& image, FeatureConfig config)
    : config_(std::move(config)) {
  config_.validate();
  if (image.size() == 0) throw DegenerateInput("WindowFeatureExtractor: empty image");
  if (!config_.glcmOffsets.empty()) quantized_ = quantize(image, config_.levels).values();
  lbp_.reserve(config_.lbpRadii.size());
  for (double r : config_.lbpRadii) lbp_.push_back(compute_lbp(image, r, config_.lbp));
}

void WindowFeatureExtractor::extract(Index top, Index left, Index rows, Index cols,
                                     Eigen::Ref<Eigen::VectorXd> out) const {
  if (out.size() != static_cast<Index>(config_.column_count()))
    throw DimensionMismatch("WindowFeatureExtractor: output size does not match column count");
  Index k = 0;
  for (const Offset& offset : config_.glcmOffsets) {
    const Glcm glcm =
        compute_glcm(quantized_.block(top, left, rows, cols), config_.levels, offset, config_.glcm);
    for (double v : haralick_features(glcm).values()) out(k++) = v;
  }
  if (lbp_.empty()) return;

  Eigen::VectorXd samples;
  for (const LbpMap& map : lbp_) {
    const Index m = map.borderMargin;
    const Index innerRows = rows - 2 * m;
    const Index innerCols = cols - 2 * m;
    if (innerRows < 1 || innerCols < 1)
      throw DegenerateInput("patch too small for LBP radius " + format_radius(map.radius));
    samples.resize(innerRows * innerCols);
    Index s = 0;
    for (Index r = 0; r < innerRows; ++r)
      for (Index c = 0; c < innerCols; ++c) samples(s++) = map.codes(top + m + r, left + m + c);
    for (double v : first_order_stats(samples).values()) out(k++) = v;
  }
}

Eigen::VectorXd WindowFeatureExtractor::extract(Index top, Index left, Index rows, Index cols) const {
  Eigen::VectorXd out(static_cast<Index>(config_.column_count()));
  extract(top, left, rows, cols, out);
  return out;
}

FeatureVector patch_features(const GrayRaster& patch, const FeatureConfig& config) {
  const WindowFeatureExtractor extractor(patch, config);
  return {config.column_names(), extractor.extract(0, 0, patch.rows(), patch.cols())};
}

}  // namespace glandseg
