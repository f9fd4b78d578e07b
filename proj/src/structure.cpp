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

#include "coalition/structure.hpp"

#include <algorithm>
#include <string>

#include "coalition/error.hpp"

namespace coalition {

CoalitionStructure CoalitionStructure::all_unattached(const Game& game) {
  return from_assignment(
      game, std::vector<std::int32_t>(game.peers().size(), kUnattached));
}

CoalitionStructure CoalitionStructure::round_robin(const Game& game) {
  const std::vector<PlayerId> providers = game.providers().members();
  std::vector<std::int32_t> assignment(game.peers().size(), kUnattached);
  if (!providers.empty()) {
    for (std::size_t j = 0; j < assignment.size(); ++j) {
      assignment[j] = static_cast<std::int32_t>(providers[j % providers.size()]);
    }
  }
  return from_assignment(game, std::move(assignment));
}

CoalitionStructure CoalitionStructure::from_assignment(
    const Game& game, std::vector<std::int32_t> assignment) {
  CoalitionStructure out;
  out.players_ = game.size();
  out.providers_ = game.providers();
  out.peer_ids_ = game.peers().members();
  if (assignment.size() != out.peer_ids_.size()) {
    throw Error(ErrorCode::kInvalidStructure,
                "assignment has " + std::to_string(assignment.size()) +
                    " entries for " + std::to_string(out.peer_ids_.size()) +
                    " peers");
  }
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const std::int32_t a = assignment[j];
    if (a == kUnattached) continue;
    if (a < 0 || static_cast<std::size_t>(a) >= out.players_ ||
        !out.providers_.contains(static_cast<PlayerId>(a))) {
      throw Error(ErrorCode::kInvalidStructure,
                  "peer " + std::to_string(out.peer_ids_[j]) +
                      " is assigned to " + std::to_string(a) +
                      ", which is not a provider");
    }
  }
  out.assignment_ = std::move(assignment);
  return out;
}

std::int32_t CoalitionStructure::anchor_of(PlayerId peer) const {
  auto it = std::lower_bound(peer_ids_.begin(), peer_ids_.end(), peer);
  if (it == peer_ids_.end() || *it != peer) {
    throw Error(ErrorCode::kInvalidStructure,
                "player " + std::to_string(peer) + " is not a peer");
  }
  return assignment_[it - peer_ids_.begin()];
}

std::vector<Coalition> CoalitionStructure::blocks() const {
  std::vector<Coalition> out;
  for (PlayerId p : providers_.members()) out.push_back(block_of(p));
  for (std::size_t j = 0; j < peer_ids_.size(); ++j) {
    if (assignment_[j] == kUnattached) out.push_back(Coalition::singleton(peer_ids_[j]));
  }
  return out;
}

Coalition CoalitionStructure::block_of(PlayerId player) const {
  std::int32_t anchor = 0;
  if (providers_.contains(player)) {
    anchor = static_cast<std::int32_t>(player);
  } else {
    anchor = anchor_of(player);
    if (anchor == kUnattached) return Coalition::singleton(player);
  }
  Coalition block = Coalition::singleton(static_cast<PlayerId>(anchor));
  for (std::size_t j = 0; j < peer_ids_.size(); ++j) {
    if (assignment_[j] == anchor) block = block.with(peer_ids_[j]);
  }
  return block;
}

CoalitionStructure CoalitionStructure::with_anchor(PlayerId peer,
                                                   std::int32_t provider) const {
  CoalitionStructure next = *this;
  auto it = std::lower_bound(peer_ids_.begin(), peer_ids_.end(), peer);
  if (it == peer_ids_.end() || *it != peer) {
    throw Error(ErrorCode::kInvalidStructure,
                "player " + std::to_string(peer) + " is not a peer");
  }
  if (provider != kUnattached &&
      (provider < 0 || !providers_.contains(static_cast<PlayerId>(provider)))) {
    throw Error(ErrorCode::kInvalidStructure,
                std::to_string(provider) + " is not a provider");
  }
  next.assignment_[it - peer_ids_.begin()] = provider;
  return next;
}

std::string CoalitionStructure::encode() const {
  std::string out;
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    if (j != 0) out += ',';
    out += assignment_[j] == kUnattached ? std::string("-")
                                          : std::to_string(assignment_[j]);
  }
  return out;
}

}  // namespace coalition
