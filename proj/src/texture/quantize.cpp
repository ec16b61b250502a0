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

#include "glandseg/texture.hpp"

namespace glandseg {

GrayImage quantize(const GrayRaster& image, int levels) {
  if (levels < 2 || levels > 256) throw InvalidArgument("quantize: levels must be in [2, 256]");
  GrayRaster out = image.unaryExpr([levels](std::uint8_t v) {
    return static_cast<std::uint8_t>((static_cast<int>(v) * levels) >> 8);
  });
  return GrayImage(std::move(out), levels);
}

}  // namespace glandseg
