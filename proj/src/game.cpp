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

#include "coalition/game.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "coalition/error.hpp"
#include "coalition/parallel.hpp"

namespace coalition {

WorthTable::WorthTable(std::size_t players, std::vector<double> values)
    : players_(players), values_(std::move(values)) {
  if (players >= 64 || values_.size() != (std::size_t{1} << players)) {
    throw Error(ErrorCode::kLengthMismatch,
                "worth table for " + std::to_string(players) +
                    " players needs 2^n entries, got " +
                    std::to_string(values_.size()));
  }
}

void CoalitionalGame::check_coalition(Coalition s) const {
  if (!s.subset_of(grand())) {
    throw Error(ErrorCode::kInvalidCoalition,
                "coalition mask " + std::to_string(s.bits()) +
                    " has a bit at or above " + std::to_string(size()));
  }
}

WorthTable CoalitionalGame::tabulate(Coalition block) const {
  check_coalition(block);
  const std::vector<PlayerId> members = block.members();
  const std::size_t k = members.size();
  if (k > kMaxTabulated) {
    throw Error(ErrorCode::kTooLargeForExact,
                std::to_string(k) + " players exceed the tabulation bound " +
                    std::to_string(kMaxTabulated));
  }
  std::vector<double> values(std::size_t{1} << k);
  parallel_for(values.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      std::uint64_t bits = 0;
      for (std::uint64_t r = t; r != 0; r &= r - 1) {
        bits |= std::uint64_t{1} << members[std::countr_zero(r)];
      }
      values[t] = evaluate(Coalition(bits));
    }
  });
  values[0] = 0.0;
  return WorthTable(k, std::move(values));
}

TabularGame::TabularGame(WorthTable table) : table_(std::move(table)) {}

TabularGame TabularGame::from_function(
    std::size_t players, const std::function<double(Coalition)>& fn) {
  std::vector<double> values(std::size_t{1} << players);
  for (std::size_t mask = 1; mask < values.size(); ++mask) {
    values[mask] = fn(Coalition(mask));
  }
  return TabularGame(WorthTable(players, std::move(values)));
}

double TabularGame::worth(Coalition s) const {
  check_coalition(s);
  return table_[s.bits()];
}

WorthTable TabularGame::tabulate(Coalition block) const {
  if (block == grand()) return table_;
  return CoalitionalGame::tabulate(block);
}

double AllocationPlan::assigned_to(PlayerId provider) const {
  double total = 0.0;
  for (const Transfer& t : transfers) {
    if (t.provider == provider) total += t.bandwidth;
  }
  return total;
}

double AllocationPlan::assigned_from(PlayerId peer) const {
  double total = 0.0;
  for (const Transfer& t : transfers) {
    if (t.peer == peer) total += t.bandwidth;
  }
  return total;
}

struct Game::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, double> values;
};

Game::Game(std::vector<PlayerKind> roster)
    : players_(std::move(roster)), cache_(std::make_unique<Cache>()) {
  for (PlayerId i = 0; i < players_.size(); ++i) {
    if (std::holds_alternative<Provider>(players_[i])) {
      providers_ = providers_.with(i);
      pour_order_.push_back(i);
    } else {
      peers_ = peers_.with(i);
    }
  }
  std::stable_sort(pour_order_.begin(), pour_order_.end(),
                   [this](PlayerId a, PlayerId b) {
                     return provider(a).server_cost_per_bandwidth >
                            provider(b).server_cost_per_bandwidth;
                   });
}

Game::Game(Game&&) noexcept = default;
Game& Game::operator=(Game&&) noexcept = default;
Game::~Game() = default;

bool Game::is_provider(PlayerId i) const {
  return providers_.contains(i);
}

const Provider& Game::provider(PlayerId i) const {
  return std::get<Provider>(players_.at(i));
}

const Peer& Game::peer(PlayerId i) const {
  return std::get<Peer>(players_.at(i));
}

double Game::evaluate(Coalition s) const {
  if ((s & providers_).is_empty()) return 0.0;
  double pooled = 0.0;
  for (std::uint64_t b = (s & peers_).bits(); b != 0; b &= b - 1) {
    pooled += peer(static_cast<PlayerId>(std::countr_zero(b))).upload_capacity;
  }
  double total = 0.0;
  for (PlayerId i : pour_order_) {
    if (!s.contains(i)) continue;
    const Provider& p = provider(i);
    const double demand = p.demand();
    const double served = std::min(pooled, demand);
    pooled -= served;
    total += p.revenue() - p.server_cost_per_bandwidth * (demand - served);
  }
  return total;
}

double Game::worth(Coalition s) const {
  check_coalition(s);
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->values.find(s.bits());
    if (it != cache_->values.end()) return it->second;
  }
  const double value = evaluate(s);
  std::unique_lock lock(cache_->mutex);
  // A concurrent writer may have stored the same value first.
  return cache_->values.try_emplace(s.bits(), value).first->second;
}

AllocationPlan Game::allocate(Coalition s) const {
  check_coalition(s);
  AllocationPlan plan;
  if ((s & providers_).is_empty()) return plan;

  const std::vector<PlayerId> peer_ids = (s & peers_).members();
  std::size_t next_peer = 0;
  double left_at_peer = peer_ids.empty() ? 0.0 : peer(peer_ids[0]).upload_capacity;

  for (PlayerId i : pour_order_) {
    if (!s.contains(i)) continue;
    double need = provider(i).demand();
    while (need > 0.0 && next_peer < peer_ids.size()) {
      const double give = std::min(need, left_at_peer);
      if (give > 0.0) {
        plan.transfers.push_back({peer_ids[next_peer], i, give});
        need -= give;
        left_at_peer -= give;
      }
      if (left_at_peer <= 0.0) {
        ++next_peer;
        if (next_peer < peer_ids.size()) {
          left_at_peer = peer(peer_ids[next_peer]).upload_capacity;
        }
      }
    }
  }
  return plan;
}

void Game::clear_cache() const {
  std::unique_lock lock(cache_->mutex);
  cache_->values.clear();
}

std::size_t Game::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->values.size();
}

namespace {

void check_field(double value, std::size_t index, const char* field) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kInvalidParameter,
                "players[" + std::to_string(index) + "]." + field +
                    " must be finite and non-negative");
  }
}

}  // namespace

Game make_game(std::vector<PlayerKind> roster) {
  if (roster.empty()) {
    throw Error(ErrorCode::kEmptyRoster, "a game needs at least one player");
  }
  if (roster.size() > kMaxPlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                std::to_string(roster.size()) + " players exceed " +
                    std::to_string(kMaxPlayers));
  }
  for (std::size_t i = 0; i < roster.size(); ++i) {
    if (const auto* p = std::get_if<Provider>(&roster[i])) {
      check_field(p->subscribers, i, "subscribers");
      check_field(p->revenue_per_subscriber, i, "revenue");
      check_field(p->demand_per_subscriber, i, "demand");
      check_field(p->server_cost_per_bandwidth, i, "cost");
    } else {
      check_field(std::get<Peer>(roster[i]).upload_capacity, i, "upload");
    }
  }
  return Game(std::move(roster));
}

AllocationPlan allocate_uploads(const Game& game, Coalition s) {
  return game.allocate(s);
}

double worth(const Game& game, Coalition s) { return game.worth(s); }

}  // namespace coalition
