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

#include "coalition/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "coalition/error.hpp"
#include "coalition/kernels.hpp"
#include "coalition/simplex.hpp"

namespace coalition {
namespace {

void check_enumerable(std::size_t n, std::size_t bound) {
  if (n > bound) {
    throw Error(ErrorCode::kTooLargeForEnumeration,
                std::to_string(n) + " players exceed the enumeration bound " +
                    std::to_string(bound));
  }
}

// sums[mask] = sum of x[i] over the members of mask, built by doubling.
std::vector<double> coalition_sums(std::span<const double> x) {
  std::vector<double> sums(std::size_t{1} << x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::size_t half = std::size_t{1} << j;
    kernels::add_constant(std::span<const double>(sums).first(half), x[j],
                          std::span<double>(sums).subspan(half, half));
  }
  return sums;
}

double scale_of(const WorthTable& table) {
  double scale = 1.0;
  for (double v : table.values()) scale = std::max(scale, std::abs(v));
  return scale;
}

// Largest v(S) - x(S) over proper nonempty coalitions.
double max_excess(const WorthTable& table, std::span<const double> x) {
  std::vector<double> excess = coalition_sums(x);
  kernels::subtract(table.values(), excess, excess);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask + 1 < excess.size(); ++mask) {
    worst = std::max(worst, excess[mask]);
  }
  return worst;
}

}  // namespace

CoreReport core_contains(const WorthTable& table, std::span<const double> x,
                         double tol) {
  const std::size_t n = table.players();
  if (x.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "payoff vector has " + std::to_string(x.size()) +
                    " entries for " + std::to_string(n) + " players");
  }
  check_enumerable(n, kMaxCoreCheckPlayers);
  if (!(tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "tolerance must be non-negative");
  }

  std::vector<double> excess = coalition_sums(x);
  kernels::subtract(table.values(), excess, excess);

  CoreReport report;
  report.tolerance = tol;
  const std::size_t grand = excess.size() - 1;
  for (std::size_t mask = 1; mask < grand; ++mask) {
    if (excess[mask] > tol) {
      report.violations.push_back({Coalition(mask), excess[mask]});
    }
  }
  if (n > 0 && std::abs(excess[grand]) > tol) {
    report.efficiency_violated = true;
    report.violations.push_back({Coalition(grand), std::abs(excess[grand])});
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return a.excess > b.excess;
                   });
  report.is_member = report.violations.empty();
  return report;
}

CoreReport core_contains(const CoalitionalGame& game, std::span<const double> x,
                         double tol) {
  check_enumerable(game.size(), kMaxCoreCheckPlayers);
  return core_contains(game.tabulate(), x, tol);
}

// Substituting x_i = v({i}) - eps + y_i turns the epsilon-core into
//   y >= 0,  y(S) >= b_S for |S| >= 2,  y(N) = budget,
// with b_S = v(S) - sum_{i in S} v({i}) + eps (|S| - 1). It is nonempty iff
// min y(N) over the inequalities is at most the budget. That minimum is found
// through its dual, max sum b_S l_S s.t. sum_{S contains i} l_S <= 1, l >= 0,
// which has one row per player, a feasible slack basis, and the minimizing y
// as its shadow prices. Columns with b_S <= 0 are implied by y >= 0 and
// dropped.
std::optional<PayoffVector> epsilon_core_point(const WorthTable& table,
                                               double epsilon) {
  const std::size_t n = table.players();
  check_enumerable(n, kMaxCoreLpPlayers);
  if (n == 0) return PayoffVector{};

  const double tol = kFeasibilityTolerance * scale_of(table);
  std::vector<double> singles(n);
  for (std::size_t i = 0; i < n; ++i) singles[i] = table[std::uint64_t{1} << i];
  const std::vector<double> single_sums = coalition_sums(singles);

  const std::size_t grand = (std::size_t{1} << n) - 1;
  const double budget = table.grand() - single_sums[grand] +
                        epsilon * static_cast<double>(n);
  if (budget < -tol) return std::nullopt;

  LinearProgram lp;
  lp.rows = n;
  std::vector<std::size_t> columns;
  for (std::size_t mask = 1; mask < grand; ++mask) {
    const int size = std::popcount(mask);
    if (size < 2) continue;
    const double b = table[mask] - single_sums[mask] + epsilon * (size - 1);
    if (b > tol) {
      columns.push_back(mask);
      lp.c.push_back(b);
    }
  }
  lp.cols = columns.size();
  lp.a.assign(lp.rows * lp.cols, 0.0);
  for (std::size_t col = 0; col < lp.cols; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((columns[col] >> i) & 1U) lp.a[i * lp.cols + col] = 1.0;
    }
  }
  lp.b.assign(n, 1.0);

  SimplexOptions options;
  options.tolerance = kFeasibilityTolerance;
  options.max_iterations = 10 * (std::size_t{1} << n);
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure,
                "core dual program is bounded and feasible but the simplex "
                "did not reach an optimum");
  }
  if (sol.objective > budget + tol) return std::nullopt;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::max(0.0, sol.dual[i]);
  y[0] += budget - std::accumulate(y.begin(), y.end(), 0.0);

  PayoffVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = singles[i] - epsilon + y[i];
  return x;
}

std::optional<PayoffVector> core_nonempty(const WorthTable& table) {
  return epsilon_core_point(table, 0.0);
}

std::optional<PayoffVector> core_nonempty(const CoalitionalGame& game) {
  check_enumerable(game.size(), kMaxCoreLpPlayers);
  return core_nonempty(game.tabulate());
}


LeastCoreResult least_core(const WorthTable& table) {
  const std::size_t n = table.players();
  check_enumerable(n, kMaxCoreLpPlayers);
  // The feasibility test accepts points within its tolerance, so the
  // reported epsilon is raised to the witness's realized excess.
  auto settle = [&](double epsilon, PayoffVector witness) {
    return LeastCoreResult{std::max(epsilon, max_excess(table, witness)), std::move(witness)};
  };
  if (auto point = epsilon_core_point(table, 0.0)) {
    return settle(0.0, std::move(*point));
  }

  // The equal split lies in the eps-core for eps = max_S v(S) - |S| v(N) / n.
  const double share = table.grand() / static_cast<double>(n);
  double hi = 0.0;
  const std::size_t grand = (std::size_t{1} << n) - 1;
  for (std::size_t mask = 1; mask < grand; ++mask) {
    hi = std::max(hi, table[mask] - std::popcount(mask) * share);
  }
  LeastCoreResult result{hi, PayoffVector(n, share)};
  double lo = 0.0;
  while (hi - lo > 0.5 * kLeastCoreTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (auto point = epsilon_core_point(table, mid)) {
      hi = mid;
      result = {mid, std::move(*point)};
    } else {
      lo = mid;
    }
  }
  return settle(result.epsilon, std::move(result.witness));
}

LeastCoreResult least_core(const CoalitionalGame& game) {
  check_enumerable(game.size(), kMaxCoreLpPlayers);
  return least_core(game.tabulate());
}

DeviationReport provider_deviation(const Game& game,
                                   std::span<const Coalition> blocks) {
  Coalition covered;
  for (Coalition block : blocks) {
    if (block.is_empty() || !block.subset_of(game.grand())) {
      throw Error(ErrorCode::kInvalidStructure,
                  "block " + std::to_string(block.bits()) +
                      " is empty or names unknown players");
    }
    if (!block.disjoint(covered)) {
      throw Error(ErrorCode::kInvalidStructure,
                  "block " + std::to_string(block.bits()) + " overlaps another block");
    }
    if ((block & game.providers()).size() > 1) {
      throw Error(ErrorCode::kInvalidStructure,
                  "block " + std::to_string(block.bits()) +
                      " holds more than one provider");
    }
    covered = covered | block;
  }
  if (covered != game.grand()) {
    throw Error(ErrorCode::kInvalidStructure, "blocks do not cover every player");
  }

  const PayoffVector grand = shapley_exact(game);
  DeviationReport report;
  for (Coalition block : blocks) {
    const Coalition anchor = block & game.providers();
    if (anchor.is_empty()) continue;
    const std::vector<PlayerId> members = block.members();
    const PayoffVector local = shapley_exact(game.tabulate(block));
    const PlayerId p = anchor.members().front();
    const auto pos = std::find(members.begin(), members.end(), p) - members.begin();
    ProviderDeviation d;
    d.provider = p;
    d.grand_payoff = grand[p];
    d.split_payoff = local[pos];
    d.gain = d.split_payoff - d.grand_payoff;
    if (d.gain > kDeviationTolerance) report.grand_resists = false;
    report.providers.push_back(d);
  }
  std::sort(report.providers.begin(), report.providers.end(),
            [](const ProviderDeviation& a, const ProviderDeviation& b) {
              return a.provider < b.provider;
            });
  return report;
}

DeviationReport provider_deviation(const Game& game,
                                   const CoalitionStructure& structure) {
  const std::vector<Coalition> blocks = structure.blocks();
  return provider_deviation(game, blocks);
}

}  // namespace coalition
