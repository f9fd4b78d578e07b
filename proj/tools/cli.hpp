// Copyright 2026 The Coalition Authors
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

#ifndef COALITION_TOOLS_CLI_HPP
#define COALITION_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace coalition::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComputation = 2;

/// `coalition run <spec.json> [--out P] [--seed N] [--samples N] [--max-steps N]`
/// `coalition sweep <spec.json> --axis NAME --grid a,b,step [--out P] [--csv P]`
///
/// The result document goes to --out (or `out`); the summary table to `err`.
/// Files are written only after the analysis succeeds.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coalition::cli

#endif  // COALITION_TOOLS_CLI_HPP
