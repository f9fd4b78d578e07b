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

#include "coalition/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "coalition/error.hpp"
#include "coalition/rng.hpp"

namespace coalition {

double BlockShapley::payoff(Coalition block, PlayerId player) {
  if (block.size() > kMaxBlockPlayers) {
    throw Error(ErrorCode::kBlockTooLarge,
                "block of " + std::to_string(block.size()) +
                    " players exceeds " + std::to_string(kMaxBlockPlayers));
  }
  auto it = cache_.find(block.bits());
  if (it == cache_.end()) {
    it = cache_.emplace(block.bits(), shapley_exact(game_->tabulate(block))).first;
  }
  const std::uint64_t below = block.bits() & ((std::uint64_t{1} << player) - 1);
  return it->second[std::popcount(below)];
}

PayoffVector peer_payoffs(const Game& game, const CoalitionStructure& structure) {
  PayoffVector out(game.size(), 0.0);
  BlockShapley memo(game);
  for (Coalition block : structure.blocks()) {
    if ((block & game.providers()).is_empty()) continue;
    for (PlayerId i : block.members()) out[i] = memo.payoff(block, i);
  }
  return out;
}

std::optional<StepResult> best_response_step(const Game& game,
                                             const CoalitionStructure& structure,
                                             std::span<const PlayerId> order,
                                             double threshold,
                                             BlockShapley& memo) {
  if (!(threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "threshold must be non-negative");
  }
  const std::vector<PlayerId> providers = game.providers().members();
  for (PlayerId peer : order) {
    const std::int32_t here = structure.anchor_of(peer);
    const double current =
        here == CoalitionStructure::kUnattached
            ? 0.0
            : memo.payoff(structure.block_of(peer), peer);

    std::optional<std::int32_t> best_to;
    double best = 0.0;
    for (PlayerId p : providers) {
      const auto to = static_cast<std::int32_t>(p);
      if (to == here) continue;
      const double there = memo.payoff(structure.block_of(p).with(peer), peer);
      if (!best_to || there > best) {
        best_to = to;
        best = there;
      }
    }
    if (here != CoalitionStructure::kUnattached && (!best_to || 0.0 > best)) {
      best_to = CoalitionStructure::kUnattached;
      best = 0.0;
    }
    if (best_to && best - current > threshold) {
      return StepResult{structure.with_anchor(peer, *best_to),
                        Move{peer, here, *best_to, best - current}};
    }
  }
  return std::nullopt;
}

std::optional<StepResult> best_response_step(const Game& game,
                                             const CoalitionStructure& structure,
                                             std::span<const PlayerId> order,
                                             double threshold) {
  BlockShapley memo(game);
  return best_response_step(game, structure, order, threshold, memo);
}

bool nash_stable(const Game& game, const CoalitionStructure& structure,
                 double threshold, BlockShapley& memo) {
  return !best_response_step(game, structure, structure.peer_ids(), threshold, memo);
}

Trajectory simulate(const Game& game, const CoalitionStructure& init,
                    const SimulationOptions& options) {
  if (options.max_steps == 0) {
    throw Error(ErrorCode::kInvalidParameter, "max_steps must be at least 1");
  }
  if (!(options.threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "threshold must be non-negative");
  }
  BlockShapley memo(game);
  SplitMix64 rng(options.seed);
  std::vector<PlayerId> order = init.peer_ids();

  Trajectory traj;
  traj.states.push_back(init);
  std::map<std::vector<std::int32_t>, std::size_t> seen;
  seen.emplace(std::vector<std::int32_t>(init.assignment().begin(),
                                         init.assignment().end()),
               0);

  for (std::size_t step = 0; step < options.max_steps; ++step) {
    if (options.policy == Policy::kRandomOrder) {
      order = init.peer_ids();
      rng.shuffle(std::span<PlayerId>(order));
    }
    auto result = best_response_step(game, traj.states.back(), order,
                                     options.threshold, memo);
    if (!result) {
      traj.outcome = {Outcome::Kind::kConverged, traj.moves.size(), 0};
      return traj;
    }
    traj.moves.push_back(result->move);
    traj.states.push_back(std::move(result->next));
    const std::span<const std::int32_t> a = traj.states.back().assignment();
    auto [it, fresh] = seen.emplace(std::vector<std::int32_t>(a.begin(), a.end()),
                                    traj.states.size() - 1);
    if (!fresh) {
      traj.outcome = {Outcome::Kind::kCycle, traj.moves.size(),
                      traj.states.size() - 1 - it->second};
      return traj;
    }
  }
  const bool stable = nash_stable(game, traj.states.back(), options.threshold, memo);
  traj.outcome = {stable ? Outcome::Kind::kConverged : Outcome::Kind::kMaxSteps,
                  traj.moves.size(), 0};
  return traj;
}

TrajectoryMetrics measure(const Game& game, const Trajectory& trajectory,
                          double threshold) {
  TrajectoryMetrics m;
  m.converged = trajectory.outcome.kind == Outcome::Kind::kConverged;
  BlockShapley memo(game);

  const CoalitionStructure& last = trajectory.states.back();
  const PayoffVector final_payoffs = peer_payoffs(game, last);
  const std::vector<PlayerId>& peers = last.peer_ids();
  for (std::size_t a = 0; a < peers.size(); ++a) {
    for (std::size_t b = a + 1; b < peers.size(); ++b) {
      if (game.peer(peers[a]).upload_capacity != game.peer(peers[b]).upload_capacity) {
        continue;
      }
      m.identical_peer_spread = std::max(
          m.identical_peer_spread,
          std::abs(final_payoffs[peers[a]] - final_payoffs[peers[b]]));
    }
  }

  for (std::size_t t = 0; t < trajectory.moves.size(); ++t) {
    const Move& mv = trajectory.moves[t];
    if (mv.to == CoalitionStructure::kUnattached) continue;
    const Coalition before = trajectory.states[t].block_of(static_cast<PlayerId>(mv.to));
    const Coalition after = before.with(mv.peer);
    double worst = 0.0;
    for (PlayerId i : before.members()) {
      worst = std::max(worst, memo.payoff(before, i) - memo.payoff(after, i));
    }
    if (worst > threshold) {
      ++m.incumbent_loss_moves;
      m.max_incumbent_loss = std::max(m.max_incumbent_loss, worst);
    }
  }
  return m;
}

}  // namespace coalition
