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

#ifndef COALITION_GAME_HPP
#define COALITION_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "coalition/coalition.hpp"

namespace coalition {

/// A content provider: m subscribers paying r each, each demanding d units of
/// bandwidth that the provider serves at cost c per unit unless peers help.
struct Provider {
  double subscribers = 0.0;
  double revenue_per_subscriber = 0.0;
  double demand_per_subscriber = 0.0;
  double server_cost_per_bandwidth = 0.0;

  double demand() const { return subscribers * demand_per_subscriber; }
  double revenue() const { return subscribers * revenue_per_subscriber; }

  friend bool operator==(const Provider&, const Provider&) = default;
};

struct Peer {
  double upload_capacity = 0.0;

  friend bool operator==(const Peer&, const Peer&) = default;
};

using PlayerKind = std::variant<Provider, Peer>;

/// Dense characteristic function: values[mask] is the worth of the coalition
/// whose members are the set bits of mask.
class WorthTable {
 public:
  WorthTable() = default;
  WorthTable(std::size_t players, std::vector<double> values);

  std::size_t players() const { return players_; }
  double operator[](std::uint64_t mask) const { return values_[mask]; }
  std::span<const double> values() const { return values_; }
  double grand() const { return values_.back(); }

 private:
  std::size_t players_ = 0;
  std::vector<double> values_{0.0};
};

/// Transferable-utility game. worth() must be safe to call concurrently.
class CoalitionalGame {
 public:
  virtual ~CoalitionalGame() = default;

  virtual std::size_t size() const = 0;
  virtual double worth(Coalition s) const = 0;

  Coalition grand() const { return Coalition::grand(size()); }

  /// Worth of every coalition. Throws kTooLargeForExact above kMaxTabulated.
  WorthTable tabulate() const { return tabulate(grand()); }

  /// The game restricted to `block`: index t of the result addresses the
  /// coalition formed by the members of `block` selected by the bits of t,
  /// members taken in ascending player order.
  virtual WorthTable tabulate(Coalition block) const;

  static constexpr std::size_t kMaxTabulated = 24;

 protected:
  /// Uncached evaluation hook used by tabulate(); defaults to worth().
  virtual double evaluate(Coalition s) const { return worth(s); }

  void check_coalition(Coalition s) const;
};

/// A game given directly by its table. Used for classic textbook games and
/// randomized test corpora.
class TabularGame final : public CoalitionalGame {
 public:
  explicit TabularGame(WorthTable table);

  static TabularGame from_function(
      std::size_t players, const std::function<double(Coalition)>& fn);

  std::size_t size() const override { return table_.players(); }
  double worth(Coalition s) const override;
  WorthTable tabulate(Coalition block) const override;
  const WorthTable& table() const { return table_; }

 private:
  WorthTable table_;
};

/// Bandwidth routed from one peer to one provider.
struct Transfer {
  PlayerId peer = 0;
  PlayerId provider = 0;
  double bandwidth = 0.0;
};

struct AllocationPlan {
  std::vector<Transfer> transfers;

  double assigned_to(PlayerId provider) const;
  double assigned_from(PlayerId peer) const;
};

/// The peer-assisted service game: providers earn subscription revenue and pay
/// for the server bandwidth their peers do not cover.
class Game final : public CoalitionalGame {
 public:
  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;
  Game(Game&&) noexcept;
  Game& operator=(Game&&) noexcept;
  ~Game() override;

  std::size_t size() const override { return players_.size(); }
  double worth(Coalition s) const override;

  const std::vector<PlayerKind>& players() const { return players_; }
  bool is_provider(PlayerId i) const;
  bool is_peer(PlayerId i) const { return !is_provider(i); }
  const Provider& provider(PlayerId i) const;
  const Peer& peer(PlayerId i) const;
  Coalition providers() const { return providers_; }
  Coalition peers() const { return peers_; }

  AllocationPlan allocate(Coalition s) const;

  void clear_cache() const;
  std::size_t cache_size() const;

 protected:
  double evaluate(Coalition s) const override;

 private:
  friend Game make_game(std::vector<PlayerKind> roster);
  explicit Game(std::vector<PlayerKind> roster);

  struct Cache;

  std::vector<PlayerKind> players_;
  // Providers by descending cost, ties by ascending index.
  std::vector<PlayerId> pour_order_;
  Coalition providers_;
  Coalition peers_;
  std::unique_ptr<Cache> cache_;
};

/// Throws kEmptyRoster, kTooManyPlayers, kInvalidParameter.
Game make_game(std::vector<PlayerKind> roster);

/// Cost-minimizing routing of the coalition's pooled peer upload capacity.
/// Throws kInvalidCoalition.
AllocationPlan allocate_uploads(const Game& game, Coalition s);

double worth(const Game& game, Coalition s);

}  // namespace coalition

#endif  // COALITION_GAME_HPP
