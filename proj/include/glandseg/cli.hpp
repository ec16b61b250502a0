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


#ifndef GLANDSEG_CLI_HPP
#define GLANDSEG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace glandseg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand (patchify, extract, train, segment, evaluate, serve).
/// `args` excludes the program name. Returns 0 on success, 1 for usage errors
/// and invalid arguments, 2 for unreadable or inconsistent data.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_run(const std::vector<std::string>& args);

}  // namespace glandseg

#endif  // GLANDSEG_CLI_HPP
