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

#ifndef GLANDSEG_TEXTURE_HPP
#define GLANDSEG_TEXTURE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "glandseg/error.hpp"
#include "glandseg/image.hpp"

namespace glandseg {

// ---------------------------------------------------------------------------
// Quantization

/// Maps 8-bit intensities onto `levels` bins: floor(v * levels / 256).
GrayImage quantize(const GrayRaster& image, int levels);

// ---------------------------------------------------------------------------
// Co-occurrence

enum class Angle { Deg0 = 0, Deg45 = 45, Deg90 = 90, Deg135 = 135 };

struct Displacement {
  int dRow;
  int dCol;
  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Pixel-pair displacement given as distance and one of the four canonical angles.
class Offset {
 public:
  Offset(int delta, Angle theta) : delta_(delta), theta_(theta) {
    if (delta < 1) throw InvalidArgument("Offset: delta must be >= 1");
  }
  static Offset from_degrees(int delta, int degrees);

  int delta() const { return delta_; }
  Angle theta() const { return theta_; }
  int degrees() const { return static_cast<int>(theta_); }

  /// 0 -> (0, d), 45 -> (-d, d), 90 -> (-d, 0), 135 -> (-d, -d).
  Displacement displacement() const;

  friend bool operator==(const Offset&, const Offset&) = default;

 private:
  int delta_;
  Angle theta_;
};

/// Distances {1, 2, 4, 8, 16} crossed with all four angles, distance-major.
std::vector<Offset> standard_offset_grid();

struct GlcmOptions {
  bool symmetric = false;
  bool normalize = true;
  friend bool operator==(const GlcmOptions&, const GlcmOptions&) = default;
};

struct Glcm {
  int levels;
  Eigen::MatrixXd cells;
  bool normalized;
  bool symmetric;
  Offset offset;
};

/// Co-occurrence matrix of any integer-valued matrix expression whose values are
/// already in [0, levels). Used directly on window blocks by the segmenter.
template <typename Derived>
Glcm compute_glcm(const Eigen::MatrixBase<Derived>& values, int levels, Offset offset,
                  GlcmOptions options = {}) {
  const Displacement d = offset.displacement();
  const Index rows = values.rows();
  const Index cols = values.cols();
  const Index rowBegin = std::max<Index>(0, -d.dRow);
  const Index rowEnd = std::min<Index>(rows, rows - d.dRow);
  const Index colBegin = std::max<Index>(0, -d.dCol);
  const Index colEnd = std::min<Index>(cols, cols - d.dCol);
  if (rowBegin >= rowEnd || colBegin >= colEnd)
    throw DegenerateInput("compute_glcm: image smaller than displacement, no pixel pairs");

  Glcm glcm{levels, Eigen::MatrixXd::Zero(levels, levels), false, options.symmetric, offset};
  for (Index r = rowBegin; r < rowEnd; ++r) {
    for (Index c = colBegin; c < colEnd; ++c) {
      const auto a = static_cast<Index>(values(r, c));
      const auto b = static_cast<Index>(values(r + d.dRow, c + d.dCol));
      glcm.cells(a, b) += 1.0;
    }
  }
  if (options.symmetric) glcm.cells += glcm.cells.transpose().eval();
  if (options.normalize) {
    glcm.cells /= glcm.cells.sum();
    glcm.normalized = true;
  }
  return glcm;
}

Glcm compute_glcm(const GrayImage& image, Offset offset, GlcmOptions options = {});

struct HaralickFeatures {
  double contrast = 0;
  double correlation = 0;
  double energy = 0;
  double homogeneity = 0;
  double entropy = 0;
  double mean = 0;
  double stdDev = 0;
  double dissimilarity = 0;

  static constexpr std::array<std::string_view, 8> kNames = {
      "contrast", "correlation", "energy", "homogeneity", "entropy", "mean", "std_dev", "dissimilarity"};

  std::array<double, 8> values() const {
    return {contrast, correlation, energy, homogeneity, entropy, mean, stdDev, dissimilarity};
  }
};

/// Haralick descriptors of a co-occurrence matrix. An unnormalized matrix is
/// normalized on a copy. Mean and stdDev describe the row marginal; correlation
/// is 1 when either marginal has zero variance.
HaralickFeatures haralick_features(const Glcm& glcm);

// ---------------------------------------------------------------------------
// Local binary patterns

enum class LbpSampling {
  /// P points on the circle of radius r, bilinearly interpolated.
  Circular,
  /// Eight points on the square ring of half-width r (the classic 3x3 ring at r = 1).
  Square,
};

struct LbpOptions {
  int neighbors = 8;
  LbpSampling sampling = LbpSampling::Circular;
  friend bool operator==(const LbpOptions&, const LbpOptions&) = default;
};

struct LbpMap {
  Index width = 0;
  Index height = 0;
  /// Full-size code raster; the border of `borderMargin` pixels is left at 0.
  Raster<std::uint32_t> codes;
  double radius = 1;
  int neighbors = 8;
  int borderMargin = 1;

  auto interior() const {
    return codes.block(borderMargin, borderMargin, height - 2 * borderMargin,
                       width - 2 * borderMargin);
  }
};

/// LBP codes: bit k compares sample k (starting due east, counter-clockwise) to
/// the center and is set when the sample is greater than or equal.
LbpMap compute_lbp(const GrayRaster& image, double radius, LbpOptions options = {});

/// ceil(radius), the undefined border width of an LBP map.
int lbp_margin(double radius);

// ---------------------------------------------------------------------------
// First-order statistics

struct FirstOrderStats {
  double mean = 0;
  double stdDev = 0;
  double skewness = 0;
  double kurtosis = 0;

  static constexpr std::array<std::string_view, 4> kNames = {"mean", "std_dev", "skewness",
                                                             "kurtosis"};
  std::array<double, 4> values() const { return {mean, stdDev, skewness, kurtosis}; }
};

/// Population moments; kurtosis is raw (3 for a normal). Constant input yields
/// zero spread, skewness and kurtosis.
template <typename Derived>
FirstOrderStats first_order_stats(const Eigen::DenseBase<Derived>& samples) {
  const Index n = samples.size();
  if (n == 0) throw InvalidArgument("first_order_stats: empty input");
  const auto x = samples.derived().template cast<double>().eval();

  FirstOrderStats s;
  if (x.minCoeff() == x.maxCoeff()) {
    s.mean = x(0);
    return s;
  }
  s.mean = x.sum() / static_cast<double>(n);
  double m2 = 0, m3 = 0, m4 = 0;
  for (Index i = 0; i < n; ++i) {
    const double d = x(i) - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  s.stdDev = std::sqrt(m2);
  s.skewness = m3 / (m2 * s.stdDev);
  s.kurtosis = m4 / (m2 * m2);
  return s;
}

// ---------------------------------------------------------------------------
// Feature vectors

/// Which texture families a feature vector contains and how they are computed.
struct FeatureConfig {
  std::vector<Offset> glcmOffsets;
  std::vector<double> lbpRadii;
  int levels = 8;
  GlcmOptions glcm;
  LbpOptions lbp;

  /// GLCM at (1, 0 deg) plus LBP at r = 1: 12 columns.
  static FeatureConfig combined();
  static FeatureConfig glcm_only(std::vector<Offset> offsets = standard_offset_grid());
  static FeatureConfig lbp_only(std::vector<double> radii = {1, 2, 4, 8, 16});

  /// Throws InvalidArgument for an empty or out-of-range configuration.
  void validate() const;
  std::size_t column_count() const { return glcmOffsets.size() * 8 + lbpRadii.size() * 4; }
  /// GLCM block (8 per offset) then LBP block (4 per radius).
  std::vector<std::string> column_names() const;
  /// Largest LBP border margin, 0 without LBP.
  int lbp_margin() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

/// Recovers offsets and radii from column names produced by column_names();
/// other settings keep their defaults. Throws DataError on foreign names.
FeatureConfig feature_config_from_columns(const std::vector<std::string>& columns);

struct FeatureVector {
  std::vector<std::string> names;
  Eigen::VectorXd values;
};

/// Precomputes the quantized plane and LBP code planes of one image so that any
/// rectangular window can be described without recomputation. Features for a
/// window are identical to patch_features() on the cropped window.
class WindowFeatureExtractor {
 public:
  WindowFeatureExtractor(const GrayRaster& image, FeatureConfig config);

  void extract(Index top, Index left, Index rows, Index cols, Eigen::Ref<Eigen::VectorXd> out) const;
  Eigen::VectorXd extract(Index top, Index left, Index rows, Index cols) const;

  const FeatureConfig& config() const { return config_; }

 private:
  FeatureConfig config_;
  GrayRaster quantized_;
  std::vector<LbpMap> lbp_;
};

FeatureVector patch_features(const GrayRaster& patch, const FeatureConfig& config);

}  // namespace glandseg

#endif  // GLANDSEG_TEXTURE_HPP
