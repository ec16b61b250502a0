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

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <thread>

#include <jpeglib.h>
#include <png.h>

#include "glandseg/io/image_codec.hpp"
#include "glandseg/io/preparation.hpp"

namespace glandseg::io {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void check_limits(Index width, Index height, const DecodeLimits& limits) {
  if ((limits.maxWidth > 0 && width > limits.maxWidth) || (limits.maxHeight > 0 && height > limits.maxHeight))
    throw DimensionLimitExceeded("image " + std::to_string(width) + "x" + std::to_string(height) +
                                 " exceeds the limit of " + std::to_string(limits.maxWidth) + "x" +
                                 std::to_string(limits.maxHeight));
}

DecodedImage decode_png(std::span<const std::uint8_t> bytes, const DecodeLimits& limits, bool* wasGray) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw DataError(std::string("PNG decode failed: ") + image.message);

  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw UnsupportedFormat("PNG decode: 16-bit channels are not supported");
  }
  const Index width = image.width;
  const Index height = image.height;
  try {
    check_limits(width, height, limits);
  } catch (...) {
    png_image_free(&image);
    throw;
  }

  const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
  if (wasGray) *wasGray = gray && (image.format & PNG_FORMAT_FLAG_ALPHA) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

  DecodedImage out;
  out.width = width;
  out.height = height;
  out.channels = gray ? 1 : 3;
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw DataError("PNG decode failed: " + message);
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr info) {
  auto* err = reinterpret_cast<JpegErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

// Warnings (level -1) flag corrupt or truncated data; treat them as fatal so no
// partially decoded raster is ever returned.
void jpeg_emit_message(j_common_ptr info, int level) {
  if (level < 0) jpeg_error_exit(info);
}

// Plain C control flow only between setjmp and the end of the function: no
// objects with non-trivial destructors are created after setjmp.
int decode_jpeg_raw(const std::uint8_t* data, std::size_t size, DecodedImage* out, const DecodeLimits* limits,
                    char* message, bool* overLimit) {
  jpeg_decompress_struct info;
  JpegErrorManager err;
  info.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_emit_message;
  err.message[0] = '\0';
  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&info);
    return 1;
  }
  jpeg_create_decompress(&info);
  jpeg_mem_src(&info, data, static_cast<unsigned long>(size));
  jpeg_read_header(&info, TRUE);
  const Index width = info.image_width;
  const Index height = info.image_height;
  if ((limits->maxWidth > 0 && width > limits->maxWidth) || (limits->maxHeight > 0 && height > limits->maxHeight)) {
    *overLimit = true;
    out->width = width;
    out->height = height;
    jpeg_destroy_decompress(&info);
    return 1;
  }
  info.out_color_space = info.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&info);
  out->width = width;
  out->height = height;
  out->channels = info.output_components;
  out->pixels.resize(static_cast<std::size_t>(width * height * out->channels));
  while (info.output_scanline < info.output_height) {
    JSAMPROW row = out->pixels.data() + static_cast<std::size_t>(info.output_scanline) * width * out->channels;
    jpeg_read_scanlines(&info, &row, 1);
  }
  jpeg_finish_decompress(&info);
  jpeg_destroy_decompress(&info);
  return 0;
}

DecodedImage decode_jpeg(std::span<const std::uint8_t> bytes, const DecodeLimits& limits) {
  DecodedImage out;
  char message[JMSG_LENGTH_MAX] = {};
  bool overLimit = false;
  out.pixels.reserve(0);
  if (decode_jpeg_raw(bytes.data(), bytes.size(), &out, &limits, message, &overLimit) != 0) {
    if (overLimit) check_limits(out.width, out.height, limits);
    throw DataError(std::string("JPEG decode failed: ") + message);
  }
  return out;
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

std::vector<std::uint8_t> encode_png_raw(const std::uint8_t* pixels, Index width, Index height, bool color) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0, nullptr))
    throw DataError(std::string("PNG encode failed: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0, nullptr))
    throw DataError(std::string("PNG encode failed: ") + image.message);
  out.resize(size);
  return out;
}

}  // namespace

DecodedImage decode_image(std::span<const std::uint8_t> bytes, DecodeLimits limits) {
  if (is_png(bytes)) return decode_png(bytes, limits, nullptr);
  if (is_jpeg(bytes)) return decode_jpeg(bytes, limits);
  throw UnsupportedFormat("unrecognized image format (expected PNG or JPEG)");
}

DecodedImage read_image(const std::filesystem::path& path, DecodeLimits limits) {
  const auto bytes = read_bytes(path);
  try {
    return decode_image(bytes, limits);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

RgbImage to_rgb(const DecodedImage& image) {
  if (image.channels == 3) {
    RgbImage out;
    out.width = image.width;
    out.height = image.height;
    out.pixels = image.pixels;
    return out;
  }
  RgbImage out(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    out.pixels[3 * i] = out.pixels[3 * i + 1] = out.pixels[3 * i + 2] = image.pixels[i];
  return out;
}

GrayRaster to_gray(const DecodedImage& image) {
  if (image.channels == 3) return to_grayscale(to_rgb(image));
  GrayRaster out(image.height, image.width);
  std::copy(image.pixels.begin(), image.pixels.end(), out.data());
  return out;
}

RgbImage read_rgb(const std::filesystem::path& path) { return to_rgb(read_image(path)); }

GrayRaster read_gray(const std::filesystem::path& path) { return to_gray(read_image(path)); }

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  return encode_png_raw(image.pixels.data(), image.width, image.height, true);
}

std::vector<std::uint8_t> encode_png(const GrayRaster& image) {
  return encode_png_raw(image.data(), image.cols(), image.rows(), false);
}

void write_png(const RgbImage& image, const std::filesystem::path& path) {
  write_bytes_atomic(path, encode_png(image));
}

void write_png(const GrayRaster& image, const std::filesystem::path& path) {
  write_bytes_atomic(path, encode_png(image));
}

LabelMask decode_mask(std::span<const std::uint8_t> bytes) {
  if (!is_png(bytes)) throw UnsupportedFormat("mask must be a PNG file");
  bool gray = false;
  DecodedImage image = decode_png(bytes, {}, &gray);
  if (!gray) throw UnsupportedFormat("mask must be a single-channel 8-bit PNG");
  GrayRaster labels(image.height, image.width);
  std::copy(image.pixels.begin(), image.pixels.end(), labels.data());
  const int worst = labels.maxCoeff();
  if (worst >= kLabelCount)
    throw DataError("mask contains out-of-vocabulary value " + std::to_string(worst) +
                    " (expected 0 = ignore, 1 = gland, 2 = stroma)");
  return LabelMask(std::move(labels));
}

LabelMask read_mask(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  try {
    return decode_mask(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_mask(const LabelMask& mask) { return encode_png(mask.raw()); }

void write_mask(const LabelMask& mask, const std::filesystem::path& path) {
  write_bytes_atomic(path, encode_mask(mask));
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto temp = path;
  temp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + temp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed for " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw DataError("cannot rename into " + path.string());
  }
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  write_bytes_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace glandseg::io
