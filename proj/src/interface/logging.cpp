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

#include "logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace glandseg::detail {

void configure_logging() {
  static const bool configured = [] {
    auto logger = spdlog::stderr_logger_mt("glandseg");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("GLANDSEG_LOG"); level != nullptr && *level != '\0')
      spdlog::cfg::helpers::load_levels(level);
    return true;
  }();
  (void)configured;
}

}  // namespace glandseg::detail
