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

#ifndef COALITION_STRUCTURE_HPP
#define COALITION_STRUCTURE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coalition/coalition.hpp"
#include "coalition/game.hpp"

namespace coalition {

/// Exclusive single-provider coalitions: every peer is attached to at most one
/// provider, every provider anchors its own block, and unattached peers stand
/// alone.
class CoalitionStructure {
 public:
  static constexpr std::int32_t kUnattached = -1;

  static CoalitionStructure all_unattached(const Game& game);

  /// Peer j (in ascending player order) goes to the j-th provider modulo the
  /// provider count.
  static CoalitionStructure round_robin(const Game& game);

  /// One entry per peer in ascending player order: a provider's player index
  /// or kUnattached. Throws kInvalidStructure.
  static CoalitionStructure from_assignment(const Game& game,
                                            std::vector<std::int32_t> assignment);

  std::size_t players() const { return players_; }
  const std::vector<PlayerId>& peer_ids() const { return peer_ids_; }
  Coalition providers() const { return providers_; }

  /// Per-peer assignment; this tuple is the canonical state encoding.
  std::span<const std::int32_t> assignment() const { return assignment_; }
  std::int32_t anchor_of(PlayerId peer) const;

  /// Provider blocks in ascending provider order, then unattached peers.
  std::vector<Coalition> blocks() const;
  Coalition block_of(PlayerId player) const;

  CoalitionStructure with_anchor(PlayerId peer, std::int32_t provider) const;

  /// "p0,p1,..." with "-" for unattached peers.
  std::string encode() const;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;

 private:
  std::size_t players_ = 0;
  Coalition providers_;
  std::vector<PlayerId> peer_ids_;
  std::vector<std::int32_t> assignment_;
};

}  // namespace coalition

#endif  // COALITION_STRUCTURE_HPP
