// Copyright 2026 The condmaj Authors
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
#include <vector>

namespace condmaj::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs the tool on argv (argv[0] is the program name). The report, or an
// error object, is written to `out`; human-readable diagnostics go to `err`.
// Returns the process exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// The reduced-budget property suite behind `selftest`. Writes one line per
// check to `log` and returns the number of failures.
int run_selftest(std::ostream& log, unsigned long long seed);

}  // namespace condmaj::cli
