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

#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "coalition/error.hpp"
#include "coalition/game.hpp"
#include "support/oracles.hpp"

namespace coalition {
namespace {

Provider provider(double m, double r, double d, double c) { return {m, r, d, c}; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kValidationError;
}

// Random canonical game with integer parameters, so every quantity sits on
// the 0.01-of-capacity grid used by the allocation oracle. Profitable
// providers have r >= c * d, hence non-negative standalone worth.
Game random_peer_game(testing::Rand& rng, int providers, int peers,
                      bool profitable = false) {
  std::vector<PlayerKind> roster;
  for (int i = 0; i < providers; ++i) {
    const double d = rng.integer(1, 2);
    const double c = rng.integer(1, 8) * 0.25;
    const double r = profitable ? c * d + rng.integer(0, 2) : rng.integer(0, 3);
    roster.push_back(provider(rng.integer(1, 5), r, d, c));
  }
  for (int j = 0; j < peers; ++j) roster.push_back(Peer{double(rng.integer(0, 6))});
  // Interleave so that provider and peer indices mix.
  std::shuffle(roster.begin(), roster.end(), rng.engine());
  return make_game(std::move(roster));
}

TEST(MakeGame, RejectsEmptyRoster) {
  EXPECT_EQ(code_of([] { make_game({}); }), ErrorCode::kEmptyRoster);
}

TEST(MakeGame, SingleProvider) {
  const Game g = make_game({provider(10, 1, 1, 0.5)});
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.cache_size(), 0u);
  EXPECT_TRUE(g.is_provider(0));
}

TEST(MakeGame, RejectsMoreThan64Players) {
  std::vector<PlayerKind> roster(65, Peer{1.0});
  EXPECT_EQ(code_of([&] { make_game(roster); }), ErrorCode::kTooManyPlayers);
  roster.pop_back();
  EXPECT_EQ(make_game(roster).size(), 64u);
}

TEST(MakeGame, RejectsNegativeAndNonFiniteFields) {
  EXPECT_EQ(code_of([] { make_game({provider(10, -1, 1, 0.5)}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { make_game({Peer{std::nan("")}}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { make_game({Peer{INFINITY}}); }), ErrorCode::kInvalidParameter);
}

TEST(Worth, EmptyCoalitionIsZero) {
  const Game g = make_game({provider(10, 1, 1, 0.5), Peer{4}});
  EXPECT_EQ(worth(g, Coalition::empty()), 0.0);
}

TEST(Worth, HandEvaluatedExamples) {
  const Game g = make_game({provider(10, 1, 1, 0.5), Peer{4}});
  // 10 * 1 - 0.5 * 10 and 10 - 0.5 * 6
  EXPECT_DOUBLE_EQ(worth(g, Coalition(0b01)), 5.0);
  EXPECT_DOUBLE_EQ(worth(g, Coalition(0b11)), 7.0);
  EXPECT_EQ(worth(g, Coalition(0b10)), 0.0);
}

TEST(Worth, RejectsBitsOutsideRoster) {
  const Game g = make_game({provider(10, 1, 1, 0.5), Peer{4}});
  EXPECT_EQ(code_of([&] { worth(g, Coalition(0b100)); }), ErrorCode::kInvalidCoalition);
  EXPECT_EQ(code_of([&] { allocate_uploads(g, Coalition(0b100)); }),
            ErrorCode::kInvalidCoalition);
}

TEST(Allocate, PeersOnlyGetNothing) {
  const Game g = make_game({provider(10, 1, 1, 0.5), Peer{4}, Peer{3}});
  EXPECT_TRUE(allocate_uploads(g, Coalition(0b110)).transfers.empty());
}

TEST(Allocate, SingleSink) {
  const Game g = make_game({provider(10, 1, 1, 0.5), Peer{4}});
  const AllocationPlan plan = allocate_uploads(g, Coalition(0b11));
  EXPECT_DOUBLE_EQ(plan.assigned_to(0), 4.0);
  EXPECT_DOUBLE_EQ(plan.assigned_from(1), 4.0);
}

TEST(Allocate, HigherCostProviderFirst) {
  // Residual demands 3 and 3, costs 2 and 1, one peer with 4.
  const Game g = make_game({provider(3, 10, 1, 2.0), provider(3, 10, 1, 1.0), Peer{4}});
  const AllocationPlan plan = allocate_uploads(g, g.grand());
  EXPECT_DOUBLE_EQ(plan.assigned_to(0), 3.0);
  EXPECT_DOUBLE_EQ(plan.assigned_to(1), 1.0);

  // Brute force over the peer's split in steps of 0.01.
  double best = INFINITY;
  for (int k = 0; k <= 400; ++k) {
    const double to_first = std::min(3.0, k * 0.01);
    const double to_second = std::min(3.0, 4.0 - k * 0.01);
    best = std::min(best, 2.0 * (3.0 - to_first) + 1.0 * (3.0 - to_second));
  }
  const double greedy = 2.0 * (3.0 - plan.assigned_to(0)) + 1.0 * (3.0 - plan.assigned_to(1));
  EXPECT_NEAR(greedy, best, 1e-12);
}

TEST(Allocate, EqualCostsFillLowerIndexFirst) {
  const Game g = make_game({Peer{5}, provider(4, 1, 1, 1.0), provider(4, 1, 1, 1.0)});
  const AllocationPlan plan = allocate_uploads(g, g.grand());
  EXPECT_DOUBLE_EQ(plan.assigned_to(1), 4.0);
  EXPECT_DOUBLE_EQ(plan.assigned_to(2), 1.0);
}

TEST(Allocate, PlanRespectsCapacitiesAndMembership) {
  testing::Rand rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = random_peer_game(rng, 3, 4);
    for (std::uint64_t mask = 0; mask < (1u << g.size()); ++mask) {
      const Coalition s(mask);
      const AllocationPlan plan = allocate_uploads(g, s);
      for (const Transfer& t : plan.transfers) {
        EXPECT_TRUE(s.contains(t.peer) && s.contains(t.provider));
        EXPECT_GT(t.bandwidth, 0.0);
      }
      for (PlayerId i = 0; i < g.size(); ++i) {
        if (g.is_peer(i)) {
          EXPECT_LE(plan.assigned_from(i), g.peer(i).upload_capacity + 1e-12);
        } else {
          EXPECT_LE(plan.assigned_to(i), g.provider(i).demand() + 1e-12);
        }
      }
      // The plan realizes the worth.
      double value = 0.0;
      for (PlayerId i : s.members()) {
        if (!g.is_provider(i)) continue;
        const Provider& p = g.provider(i);
        value += p.revenue() - p.server_cost_per_bandwidth * (p.demand() - plan.assigned_to(i));
      }
      const bool has_provider = !(s & g.providers()).is_empty();
      EXPECT_NEAR(value, has_provider ? worth(g, s) : 0.0, 1e-9);
    }
  }
}

TEST(Allocate, GreedyMatchesBruteForceGrid) {
  // Largest capacity 5 puts the grid step at 0.05, which divides every
  // integer demand and capacity, so the grid contains the optimum.
  testing::Rand rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<PlayerKind> roster;
    for (int i = 0; i < 3; ++i) {
      roster.push_back(provider(rng.integer(1, 5), rng.integer(0, 3), rng.integer(1, 2),
                                rng.integer(1, 8) * 0.25));
    }
    roster.push_back(Peer{5});
    for (int j = 0; j < 3; ++j) roster.push_back(Peer{double(rng.integer(0, 5))});
    std::shuffle(roster.begin(), roster.end(), rng.engine());
    const Game g = make_game(std::move(roster));
    const double h = 0.01 * 5;
    for (std::uint64_t mask = 1; mask < (1u << g.size()); ++mask) {
      const Coalition s(mask);
      if ((s & g.providers()).is_empty()) continue;
      double revenue = 0.0;
      for (PlayerId i : (s & g.providers()).members()) revenue += g.provider(i).revenue();
      const double greedy_cost = revenue - worth(g, s);
      const double brute = testing::brute_force_residual_cost(g, s, h);
      EXPECT_NEAR(greedy_cost, brute, 1e-6 * std::max(1.0, brute)) << "mask " << mask;
    }
  }
}

TEST(Worth, SuperadditiveForAnyProviders) {
  testing::Rand rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const int providers = trial % 3 + 2;
    const Game g = random_peer_game(rng, providers, trial < 3 ? 5 : 12 - providers);
    const WorthTable t = g.tabulate();
    const std::uint64_t all = (1u << g.size()) - 1;
    for (std::uint64_t s = 0; s <= all; ++s) {
      const std::uint64_t rest = all & ~s;
      for (std::uint64_t u = rest;; u = (u - 1) & rest) {
        EXPECT_GE(t[s | u], t[s] + t[u] - 1e-9);
        if (u == 0) break;
      }
    }
  }
}

TEST(Worth, MonotoneWhenProvidersAreProfitable) {
  testing::Rand rng(14);
  for (int trial = 0; trial < 4; ++trial) {
    const Game g = random_peer_game(rng, 2 + trial, 10 - trial, /*profitable=*/true);
    const WorthTable t = g.tabulate();
    for (std::uint64_t s = 0; s < t.values().size(); ++s) {
      for (PlayerId i = 0; i < g.size(); ++i) {
        ASSERT_GE(t[s | (1u << i)], t[s] - 1e-12);
      }
    }
  }
}

TEST(Worth, UnprofitableProviderBreaksMonotonicity) {
  // r < c * d: serving alone loses money, so adding it to the empty
  // coalition lowers worth.
  const Game g = make_game({provider(10, 0.2, 1, 0.5), Peer{4}});
  EXPECT_DOUBLE_EQ(worth(g, Coalition(0b01)), -3.0);
  EXPECT_DOUBLE_EQ(worth(g, Coalition(0b11)), -1.0);
}

TEST(Worth, CacheIsTransparent) {
  testing::Rand rng(15);
  const Game g = random_peer_game(rng, 3, 5);
  std::vector<double> first;
  for (std::uint64_t s = 0; s < (1u << g.size()); ++s) first.push_back(worth(g, Coalition(s)));
  EXPECT_GT(g.cache_size(), 0u);
  g.clear_cache();
  EXPECT_EQ(g.cache_size(), 0u);
  for (std::uint64_t s = 0; s < (1u << g.size()); ++s) {
    EXPECT_EQ(worth(g, Coalition(s)), first[s]);  // bit-identical
  }
  const WorthTable t = g.tabulate();
  for (std::uint64_t s = 0; s < t.values().size(); ++s) EXPECT_EQ(t[s], first[s]);
}

TEST(Worth, ConcurrentQueriesAgreeWithSerial) {
  testing::Rand rng(16);
  const Game g = random_peer_game(rng, 4, 8);
  const std::size_t total = std::size_t{1} << g.size();
  std::vector<double> serial(total);
  for (std::size_t s = 0; s < total; ++s) serial[s] = g.tabulate()[s];
  g.clear_cache();
  std::vector<std::vector<double>> seen(4, std::vector<double>(total));
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < 4; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t k = 0; k < total; ++k) {
          const std::size_t s = (k * 7 + w * 131) % total;
          seen[w][s] = g.worth(Coalition(s));
        }
      });
    }
  }
  EXPECT_EQ(g.cache_size(), total);
  for (const auto& v : seen) EXPECT_EQ(v, serial);
}

TEST(Worth, CrossProviderSynergyWitness) {
  // Provider 0's dedicated peers oversupply it; provider 1 has none.
  const Game g = make_game({provider(5, 1, 1, 1.0), provider(5, 1, 1, 1.0), Peer{5}, Peer{5}});
  const double grand = worth(g, g.grand());
  const double split = worth(g, Coalition(0b1101)) + worth(g, Coalition(0b0010));
  EXPECT_DOUBLE_EQ(grand, 10.0);
  EXPECT_DOUBLE_EQ(split, 5.0);
  EXPECT_GT(grand, split);
}

TEST(TabulateBlock, RestrictsToMembersInAscendingOrder) {
  const Game g = make_game({Peer{4}, provider(10, 1, 1, 0.5), Peer{4}});
  const WorthTable t = g.tabulate(Coalition(0b011));
  ASSERT_EQ(t.players(), 2u);
  EXPECT_EQ(t[0b01], 0.0);  // the peer alone
  EXPECT_DOUBLE_EQ(t[0b10], 5.0);
  EXPECT_DOUBLE_EQ(t[0b11], 7.0);
}

}  // namespace
}  // namespace coalition
