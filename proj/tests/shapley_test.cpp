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
#include <cstdlib>
#include <numeric>

#include "coalition/error.hpp"
#include "coalition/game.hpp"
#include "coalition/rng.hpp"
#include "coalition/shapley.hpp"
#include "support/oracles.hpp"

namespace coalition {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kValidationError;
}

TabularGame unanimity(std::size_t n, Coalition carrier) {
  return TabularGame::from_function(
      n, [carrier](Coalition s) { return carrier.subset_of(s) ? 1.0 : 0.0; });
}

TEST(ShapleyExact, TwoPlayerSymmetricGame) {
  const TabularGame g = TabularGame::from_function(
      2, [](Coalition s) { return s.size() == 2 ? 1.0 : 0.0; });
  const PayoffVector phi = shapley_exact(g);
  EXPECT_DOUBLE_EQ(phi[0], 0.5);
  EXPECT_DOUBLE_EQ(phi[1], 0.5);
}

TEST(ShapleyExact, UnanimityGameSplitsEqually) {
  const PayoffVector phi = shapley_exact(unanimity(4, Coalition::grand(4)));
  for (double x : phi) EXPECT_NEAR(x, 0.25, 1e-15);
  const PayoffVector partial = shapley_exact(unanimity(5, Coalition(0b00101)));
  EXPECT_NEAR(partial[0], 0.5, 1e-15);
  EXPECT_NEAR(partial[2], 0.5, 1e-15);
  EXPECT_EQ(partial[1], 0.0);
  EXPECT_EQ(partial[3], 0.0);
}

TEST(ShapleyExact, ProviderWithTwoPeers) {
  // v(P)=5, v(P,a)=v(P,b)=7, v(N)=9; peers alone are worth nothing.
  const Game g = make_game({Provider{10, 1, 1, 0.5}, Peer{4}, Peer{4}});
  const PayoffVector phi = shapley_exact(g);
  EXPECT_NEAR(phi[0], 7.0, 1e-12);
  EXPECT_NEAR(phi[1], 1.0, 1e-12);
  EXPECT_NEAR(phi[2], 1.0, 1e-12);
}

TEST(ShapleyExact, MatchesPermutationAverage) {
  testing::Rand rng(31);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const WorthTable t = testing::random_table(n, rng, -50, 100);
      const PayoffVector phi = shapley_exact(t);
      const std::vector<double> ref = testing::permutation_shapley(t);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(phi[i], ref[i], 1e-9) << n;
    }
  }
}

TEST(ShapleyExact, SinglePlayerGetsItsWorth) {
  const TabularGame g(WorthTable(1, {0.0, 3.5}));
  EXPECT_EQ(shapley_exact(g), PayoffVector{3.5});
}

TEST(ShapleyExact, RejectsMoreThan24Players) {
  std::vector<PlayerKind> roster{Provider{1, 1, 1, 1}};
  roster.resize(25, Peer{1.0});
  const Game g = make_game(roster);
  EXPECT_EQ(code_of([&] { shapley_exact(g); }), ErrorCode::kTooLargeForExact);
}

TEST(ShapleyExact, ZeroCapacityPeerIsANullPlayer) {
  const Game g = make_game({Provider{10, 1, 1, 0.5}, Peer{0.0}, Peer{3.0}});
  const WorthTable t = g.tabulate();
  EXPECT_TRUE(null_player(t, 1));
  const PayoffVector phi = shapley_exact(t);
  EXPECT_EQ(phi[1], 0.0);
  EXPECT_TRUE(check_axioms(t, phi).all_pass());
}

TEST(Axioms, PassForShapleyOnStructuredGames) {
  testing::Rand rng(32);
  const WorthTable t = testing::typed_table({1, 0, 1, 2, 2, 0, 3}, rng);
  EXPECT_TRUE(interchangeable(t, 0, 2));
  EXPECT_TRUE(interchangeable(t, 3, 4));
  EXPECT_TRUE(null_player(t, 1));
  EXPECT_TRUE(null_player(t, 5));
  const AxiomReport r = check_axioms(t, shapley_exact(t));
  EXPECT_TRUE(r.all_pass());
  EXPECT_LT(std::abs(r.efficiency_gap), 1e-9);
}

TEST(Axioms, DetectEachFailure) {
  testing::Rand rng(33);
  const WorthTable t = testing::typed_table({1, 1, 0, 2}, rng);
  const PayoffVector phi = shapley_exact(t);

  PayoffVector inefficient = phi;
  inefficient[3] += 1e-6;
  AxiomReport r = check_axioms(t, inefficient);
  EXPECT_FALSE(r.efficiency);
  EXPECT_NEAR(r.efficiency_gap, 1e-6, 1e-9);

  PayoffVector asymmetric = phi;
  asymmetric[0] += 0.5;
  asymmetric[1] -= 0.5;
  r = check_axioms(t, asymmetric);
  EXPECT_TRUE(r.efficiency);
  EXPECT_FALSE(r.symmetry);
  ASSERT_TRUE(r.asymmetric_pair.has_value());
  EXPECT_EQ(*r.asymmetric_pair, (std::pair<PlayerId, PlayerId>{0, 1}));

  PayoffVector paid_null = phi;
  paid_null[2] += 1.0;
  paid_null[3] -= 1.0;
  r = check_axioms(t, paid_null);
  EXPECT_FALSE(r.dummy);
  EXPECT_EQ(r.paid_null_player, PlayerId{2});
}

TEST(Axioms, InputValidation) {
  testing::Rand rng(34);
  const WorthTable t = testing::random_table(3, rng);
  EXPECT_EQ(code_of([&] { check_axioms(t, PayoffVector(2, 0.0)); }),
            ErrorCode::kLengthMismatch);
  const WorthTable big = testing::random_table(13, rng);
  EXPECT_EQ(code_of([&] { check_axioms(big, PayoffVector(13, 0.0)); }),
            ErrorCode::kTooLargeForEnumeration);
}

TEST(Additivity, ShapleyOfSumIsSumOfShapley) {
  testing::Rand rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const WorthTable a = testing::random_table(n, rng);
    const WorthTable b = testing::random_table(n, rng);
    std::vector<double> sum(a.values().size());
    for (std::size_t s = 0; s < sum.size(); ++s) sum[s] = a[s] + b[s];
    const PayoffVector pa = shapley_exact(a), pb = shapley_exact(b);
    const PayoffVector ps = shapley_exact(WorthTable(n, sum));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ps[i], pa[i] + pb[i], 1e-9);
  }
}

TEST(MarginalVector, SumsToGrandWorth) {
  const Game g = make_game({Peer{2}, Provider{10, 1, 1, 0.5}, Peer{4}});
  const std::vector<PlayerId> order{0, 2, 1};
  const PayoffVector m = marginal_vector(g, order);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m[2], 0.0);
  EXPECT_DOUBLE_EQ(m[1], worth(g, g.grand()));
}

TEST(MonteCarlo, RejectsZeroSamples) {
  const Game g = make_game({Provider{10, 1, 1, 0.5}, Peer{4}});
  EXPECT_EQ(code_of([&] { shapley_montecarlo(g, 0, 1); }), ErrorCode::kZeroSamples);
}

TEST(MonteCarlo, SingleSampleIsAMarginalVector) {
  const Game g = make_game({Provider{10, 1, 1, 0.5}, Peer{4}, Peer{4}});
  const McEstimate e = shapley_montecarlo(g, 1, 77);
  EXPECT_EQ(e.samples, 1u);
  EXPECT_EQ(e.seed, 77u);
  for (double se : e.std_error) EXPECT_EQ(se, 0.0);
  EXPECT_NEAR(std::accumulate(e.mean.begin(), e.mean.end(), 0.0), 9.0, 1e-12);
  // Every marginal vector of this game is one of (5,2,2), (7,0,2), (7,2,0),
  // (9,0,0).
  EXPECT_TRUE(e.mean[0] == 5.0 || e.mean[0] == 7.0 || e.mean[0] == 9.0);
}

TEST(MonteCarlo, DeterministicForSeed) {
  testing::Rand rng(36);
  const TabularGame g(testing::random_table(7, rng));
  const McEstimate a = shapley_montecarlo(g, 5000, 42);
  const McEstimate b = shapley_montecarlo(g, 5000, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  const McEstimate c = shapley_montecarlo(g, 5000, 43);
  EXPECT_NE(a.mean, c.mean);
}

TEST(MonteCarlo, SampleUsesDocumentedSubstream) {
  testing::Rand rng(37);
  const TabularGame g(testing::random_table(5, rng));
  for (std::uint64_t seed : {0ULL, 9ULL, 123456789ULL}) {
    std::vector<PlayerId> order{0, 1, 2, 3, 4};
    SplitMix64 stream(SplitMix64::derive(seed, 0));
    stream.shuffle(std::span<PlayerId>(order));
    EXPECT_EQ(shapley_montecarlo(g, 1, seed).mean, marginal_vector(g, order));
  }
}

TEST(MonteCarlo, CoversExactValueWithinThreeStandardErrors) {
  testing::Rand rng(38);
  const TabularGame g(testing::random_table(8, rng));
  const PayoffVector exact = shapley_exact(g);
  const McEstimate e = shapley_montecarlo(g, 20000, 5);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    EXPECT_GT(e.std_error[i], 0.0);
    EXPECT_LE(std::abs(e.mean[i] - exact[i]), 3.0 * e.std_error[i] + 1e-12) << i;
  }
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  testing::Rand rng(39);
  const TabularGame g(testing::random_table(9, rng));
  ::setenv("COALITION_THREADS", "1", 1);
  const McEstimate one = shapley_montecarlo(g, 9000, 11);
  ::setenv("COALITION_THREADS", "4", 1);
  const McEstimate four = shapley_montecarlo(g, 9000, 11);
  ::unsetenv("COALITION_THREADS");
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(MonteCarlo, RunsOnGamesBeyondTheExactBound) {
  std::vector<PlayerKind> roster;
  for (int i = 0; i < 5; ++i) roster.push_back(Provider{10, 1, 1, 0.5 + 0.1 * i});
  for (int j = 0; j < 35; ++j) roster.push_back(Peer{1.0 + j % 3});
  const Game g = make_game(roster);
  const McEstimate e = shapley_montecarlo(g, 200, 1);
  EXPECT_NEAR(std::accumulate(e.mean.begin(), e.mean.end(), 0.0), worth(g, g.grand()),
              1e-9);
}

}  // namespace
}  // namespace coalition
