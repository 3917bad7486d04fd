// Copyright 2026 The disavg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace disavg::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitConvergence = 3;

/// Runs one subcommand. CSV goes to `--out` when given (with a JSON sidecar
/// next to it), otherwise to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trip free formatting used for CSV: 17 significant digits.
std::string format_number(double value);

/// SHA-1 of the git blob object holding `content`, as lowercase hex.
std::string git_blob_sha1(std::string_view content);

}  // namespace disavg::cli
