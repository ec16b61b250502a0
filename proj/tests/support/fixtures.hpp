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


#ifndef GLANDSEG_TESTS_FIXTURES_HPP
#define GLANDSEG_TESTS_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "glandseg/image.hpp"
#include "glandseg/ml.hpp"

namespace glandseg::testing {

/// Uniform random gray values in [lo, hi].
GrayRaster random_gray(Index rows, Index cols, std::uint64_t seed, int lo = 0, int hi = 255);

/// Synthetic stand-ins for the two tissue classes. Gland: smooth, low-contrast
/// mid-gray. Stroma: fine-grained, high-contrast noise.
GrayRaster gland_texture(Index rows, Index cols, std::uint64_t seed);
GrayRaster stroma_texture(Index rows, Index cols, std::uint64_t seed);

struct Scene {
  GrayRaster image;
  LabelMask truth;
};

/// Left half gland texture, right half stroma texture.
Scene bi_texture_scene(Index size, std::uint64_t seed);

/// `perClass` windows of side `window` cut from pure texture images.
Dataset texture_window_dataset(const FeatureConfig& config, int perClass, int window, std::uint64_t seed);

/// Two well-separated Gaussian blobs, `n` samples split evenly, `dims` columns.
Dataset blob_dataset(Index n, Index dims, std::uint64_t seed, double separation = 6.0);

RgbImage gray_to_rgb(const GrayRaster& gray);

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace glandseg::testing

#endif  // GLANDSEG_TESTS_FIXTURES_HPP
