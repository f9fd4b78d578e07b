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

#ifndef COALITION_DYNAMICS_HPP
#define COALITION_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "coalition/game.hpp"
#include "coalition/shapley.hpp"
#include "coalition/structure.hpp"

namespace coalition {

inline constexpr std::size_t kMaxBlockPlayers = 20;
inline constexpr double kDefaultSwitchThreshold = 1e-9;

/// Memoized Shapley vectors of block subgames, keyed by block.
class BlockShapley {
 public:
  explicit BlockShapley(const Game& game) : game_(&game) {}

  /// Payoff of `player` inside `block` (which must contain it).
  /// Throws kBlockTooLarge.
  double payoff(Coalition block, PlayerId player);

 private:
  const Game* game_;
  std::map<std::uint64_t, PayoffVector> cache_;
};

/// Per-block Shapley payoffs; unattached peers receive 0.
PayoffVector peer_payoffs(const Game& game, const CoalitionStructure& structure);

struct Move {
  PlayerId peer = 0;
  std::int32_t from = CoalitionStructure::kUnattached;
  std::int32_t to = CoalitionStructure::kUnattached;
  double payoff_gain = 0.0;
};

struct StepResult {
  CoalitionStructure next;
  Move move;
};

/// First peer in `order` whose best alternative beats its current payoff by
/// more than `threshold` moves there. Destinations are tried providers first
/// in ascending index, then unattached; only a strictly better one replaces
/// the running best. nullopt means no peer wants to move.
std::optional<StepResult> best_response_step(const Game& game,
                                             const CoalitionStructure& structure,
                                             std::span<const PlayerId> order,
                                             double threshold);
std::optional<StepResult> best_response_step(const Game& game,
                                             const CoalitionStructure& structure,
                                             std::span<const PlayerId> order,
                                             double threshold,
                                             BlockShapley& memo);

enum class Policy { kRoundRobin, kRandomOrder };

struct SimulationOptions {
  std::size_t max_steps = 1000;
  double threshold = kDefaultSwitchThreshold;
  std::uint64_t seed = 0;
  Policy policy = Policy::kRoundRobin;
};

struct Outcome {
  enum class Kind { kConverged, kCycle, kMaxSteps };
  Kind kind = Kind::kMaxSteps;
  std::size_t step = 0;          // moves made when the outcome was decided
  std::size_t cycle_length = 0;  // kCycle only
};

struct Trajectory {
  std::vector<CoalitionStructure> states;  // states.size() == moves.size() + 1
  std::vector<Move> moves;
  Outcome outcome;
};

/// Asynchronous best-response dynamics, one move per step. RoundRobin scans
/// peers in ascending order; RandomOrder reshuffles the scan order before
/// every step from SplitMix64(seed). A revisited assignment is reported as a
/// cycle. Throws kInvalidParameter when max_steps is 0 or threshold < 0.
Trajectory simulate(const Game& game, const CoalitionStructure& init,
                    const SimulationOptions& options);

/// Diagnostics of a finished trajectory.
struct TrajectoryMetrics {
  bool converged = false;
  // Largest payoff gap between peers with equal upload capacity in the
  // final state.
  double identical_peer_spread = 0.0;
  // Moves after which some incumbent of the destination block lost more than
  // the threshold, and the largest such loss.
  std::size_t incumbent_loss_moves = 0;
  double max_incumbent_loss = 0.0;
};

TrajectoryMetrics measure(const Game& game, const Trajectory& trajectory,
                          double threshold);

/// True when no peer has an improving move (above threshold).
bool nash_stable(const Game& game, const CoalitionStructure& structure,
                 double threshold, BlockShapley& memo);

}  // namespace coalition

#endif  // COALITION_DYNAMICS_HPP
