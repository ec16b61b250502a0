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

#ifndef GLANDSEG_IO_IMAGE_CODEC_HPP
#define GLANDSEG_IO_IMAGE_CODEC_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "glandseg/image.hpp"

namespace glandseg::io {

/// Zero means unlimited. Checked against the header before pixel data is decoded.
struct DecodeLimits {
  Index maxWidth = 0;
  Index maxHeight = 0;
};

/// 8-bit pixels, 1 (gray) or 3 (RGB) interleaved channels. Alpha is dropped.
struct DecodedImage {
  Index width = 0;
  Index height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

/// PNG or JPEG, detected from the signature. Throws UnsupportedFormat for other
/// containers and 16-bit PNGs, DataError for corrupt or truncated data and
/// DimensionLimitExceeded when the header exceeds `limits`.
DecodedImage decode_image(std::span<const std::uint8_t> bytes, DecodeLimits limits = {});
DecodedImage read_image(const std::filesystem::path& path, DecodeLimits limits = {});

/// Gray input is replicated to three channels.
RgbImage to_rgb(const DecodedImage& image);
/// RGB input is converted with to_grayscale().
GrayRaster to_gray(const DecodedImage& image);

RgbImage read_rgb(const std::filesystem::path& path);
GrayRaster read_gray(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RgbImage& image);
std::vector<std::uint8_t> encode_png(const GrayRaster& image);
void write_png(const RgbImage& image, const std::filesystem::path& path);
void write_png(const GrayRaster& image, const std::filesystem::path& path);

/// Masks are single-channel 8-bit PNGs holding 0 = ignore, 1 = gland, 2 = stroma.
LabelMask decode_mask(std::span<const std::uint8_t> bytes);
LabelMask read_mask(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_mask(const LabelMask& mask);
void write_mask(const LabelMask& mask, const std::filesystem::path& path);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_bytes_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace glandseg::io

#endif  // GLANDSEG_IO_IMAGE_CODEC_HPP
