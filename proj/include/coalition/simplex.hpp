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

#ifndef COALITION_SIMPLEX_HPP
#define COALITION_SIMPLEX_HPP

#include <cstddef>
#include <vector>

namespace coalition {

/// maximize c.z  subject to  A z <= b,  z >= 0.  A is row-major rows x cols.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;  // cols entries
  std::vector<double> dual;    // rows entries, shadow prices of A z <= b
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  // 0 picks 10 * (rows + cols).
  std::size_t max_iterations = 0;
};

/// Dense tableau simplex with Bland's rule for both the entering and the
/// leaving variable. A negative right-hand side triggers a phase 1 with a
/// single auxiliary variable. Throws kNumericalFailure when the pivot count
/// exceeds the cap and kLengthMismatch on inconsistent dimensions.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace coalition

#endif  // COALITION_SIMPLEX_HPP
