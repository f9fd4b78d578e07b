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

#ifndef COALITION_STABILITY_HPP
#define COALITION_STABILITY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coalition/coalition.hpp"
#include "coalition/game.hpp"
#include "coalition/shapley.hpp"
#include "coalition/structure.hpp"

namespace coalition {

inline constexpr std::size_t kMaxCoreCheckPlayers = 20;
inline constexpr std::size_t kMaxCoreLpPlayers = 16;
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kReportingTolerance = 1e-6;
inline constexpr double kLeastCoreTolerance = 1e-7;
inline constexpr double kDeviationTolerance = 1e-9;

struct Violation {
  Coalition coalition;
  double excess = 0.0;  // v(S) - x(S); |x(N) - v(N)| for the grand coalition
};

struct CoreReport {
  bool is_member = true;
  bool efficiency_violated = false;
  std::vector<Violation> violations;  // descending excess
  double tolerance = 0.0;
};

/// Throws kTooLargeForEnumeration (N > 20), kLengthMismatch,
/// kInvalidParameter (negative tolerance).
CoreReport core_contains(const WorthTable& table, std::span<const double> x,
                         double tol);
CoreReport core_contains(const CoalitionalGame& game, std::span<const double> x,
                         double tol);

/// A point of the epsilon-core {x : x(N) = v(N), x(S) >= v(S) - eps for all
/// proper nonempty S}, or nullopt when it is empty. Decided by the dual
/// simplex formulation described in stability.cpp. Throws
/// kTooLargeForEnumeration (N > 16), kNumericalFailure.
std::optional<PayoffVector> epsilon_core_point(const WorthTable& table,
                                               double epsilon);

/// Nonempty core: a witness; empty core: nullopt.
std::optional<PayoffVector> core_nonempty(const WorthTable& table);
std::optional<PayoffVector> core_nonempty(const CoalitionalGame& game);

struct LeastCoreResult {
  double epsilon = 0.0;
  PayoffVector witness;
};

LeastCoreResult least_core(const WorthTable& table);
LeastCoreResult least_core(const CoalitionalGame& game);

struct ProviderDeviation {
  PlayerId provider = 0;
  double grand_payoff = 0.0;
  double split_payoff = 0.0;
  double gain = 0.0;  // split_payoff - grand_payoff
};

struct DeviationReport {
  std::vector<ProviderDeviation> providers;
  bool grand_resists = true;  // every gain <= 1e-9
};

/// Shapley payoff of each provider in the grand coalition against its Shapley
/// payoff in the subgame of its own block. `blocks` must partition the
/// players with at most one provider per block. Throws kInvalidStructure.
DeviationReport provider_deviation(const Game& game,
                                   std::span<const Coalition> blocks);
DeviationReport provider_deviation(const Game& game,
                                   const CoalitionStructure& structure);

}  // namespace coalition

#endif  // COALITION_STABILITY_HPP
