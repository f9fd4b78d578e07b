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

#ifndef COALITION_SHAPLEY_HPP
#define COALITION_SHAPLEY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coalition/coalition.hpp"
#include "coalition/game.hpp"

namespace coalition {

/// One payoff per player, indexed by player.
using PayoffVector = std::vector<double>;

struct McEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMaxExactPlayers = 24;
inline constexpr double kAxiomTolerance = 1e-9;
inline constexpr std::size_t kMaxAxiomPlayers = 12;

/// Exact Shapley value by subset enumeration over a dense worth table.
PayoffVector shapley_exact(const WorthTable& table);

/// Throws kTooLargeForExact when the game has more than 24 players.
PayoffVector shapley_exact(const CoalitionalGame& game);

/// Permutation sampling. Sample k draws its permutation from the SplitMix64
/// substream SplitMix64::derive(seed, k) by a Fisher-Yates shuffle of the
/// identity, so the estimate does not depend on the worker count.
/// std_error is the sample standard deviation over sqrt(samples); it is zero
/// when samples == 1. Throws kZeroSamples.
McEstimate shapley_montecarlo(const CoalitionalGame& game,
                              std::uint64_t samples, std::uint64_t seed);

/// Marginal contribution of every player along one join order.
PayoffVector marginal_vector(const CoalitionalGame& game,
                             std::span<const PlayerId> order);

struct AxiomReport {
  bool efficiency = true;
  double efficiency_gap = 0.0;  // sum(phi) - v(N)
  bool symmetry = true;
  std::optional<std::pair<PlayerId, PlayerId>> asymmetric_pair;
  bool dummy = true;
  std::optional<PlayerId> paid_null_player;

  bool all_pass() const { return efficiency && symmetry && dummy; }
};

/// Checks efficiency, symmetry (interchangeable players get equal payoffs)
/// and the null-player property, each at 1e-9. Interchangeability is decided
/// exhaustively, so games are limited to 12 players.
/// Throws kLengthMismatch, kTooLargeForEnumeration.
AxiomReport check_axioms(const WorthTable& table,
                         std::span<const double> phi);
AxiomReport check_axioms(const CoalitionalGame& game,
                         std::span<const double> phi);

/// True when i and j have equal marginal contributions (within 1e-9) to every
/// coalition containing neither.
bool interchangeable(const WorthTable& table, PlayerId i, PlayerId j);

/// True when i adds zero (within 1e-9) to every coalition.
bool null_player(const WorthTable& table, PlayerId i);

}  // namespace coalition

#endif  // COALITION_SHAPLEY_HPP
