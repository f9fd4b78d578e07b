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

#include "coalition/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "coalition/error.hpp"
#include "coalition/kernels.hpp"
#include "coalition/parallel.hpp"
#include "coalition/rng.hpp"

namespace coalition {
namespace {

// |S|! (n - |S| - 1)! / n! for every S, looked up by popcount.
std::vector<double> subset_weights(std::size_t n) {
  std::vector<double> by_size(n + 1, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    double binom = 1.0;  // C(n-1, s), exact in double for n <= 24
    for (std::size_t k = 1; k <= s; ++k) {
      binom = binom * static_cast<double>(n - k) / static_cast<double>(k);
    }
    by_size[s] = 1.0 / (static_cast<double>(n) * std::round(binom));
  }
  std::vector<double> weights(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < weights.size(); ++mask) {
    weights[mask] = by_size[std::popcount(mask)];
  }
  return weights;
}

void check_exact_size(std::size_t n) {
  if (n > kMaxExactPlayers) {
    throw Error(ErrorCode::kTooLargeForExact,
                std::to_string(n) + " players exceed the exact bound " +
                    std::to_string(kMaxExactPlayers));
  }
}

}  // namespace

PayoffVector shapley_exact(const WorthTable& table) {
  const std::size_t n = table.players();
  check_exact_size(n);
  PayoffVector phi(n, 0.0);
  if (n == 0) return phi;

  const std::vector<double> weights = subset_weights(n);
  const std::span<const double> v = table.values();
  const std::size_t total = v.size();

  // Subsets without player i come in runs of length 2^i; each run pairs with
  // the run 2^i above it, which adds i.
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t run = std::size_t{1} << i;
      double acc = 0.0;
      for (std::size_t base = 0; base < total; base += 2 * run) {
        acc += kernels::weighted_difference_sum(
            v.subspan(base, run), v.subspan(base + run, run),
            std::span<const double>(weights).subspan(base, run));
      }
      phi[i] = acc;
    }
  }, 1);
  return phi;
}

PayoffVector shapley_exact(const CoalitionalGame& game) {
  check_exact_size(game.size());
  return shapley_exact(game.tabulate());
}

PayoffVector marginal_vector(const CoalitionalGame& game,
                             std::span<const PlayerId> order) {
  const std::size_t n = game.size();
  if (order.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "join order has " + std::to_string(order.size()) +
                    " entries for " + std::to_string(n) + " players");
  }
  PayoffVector phi(n, 0.0);
  Coalition prefix;
  double before = 0.0;
  for (PlayerId i : order) {
    prefix = prefix.with(i);
    const double after = game.worth(prefix);
    phi[i] = after - before;
    before = after;
  }
  return phi;
}

McEstimate shapley_montecarlo(const CoalitionalGame& game,
                              std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) {
    throw Error(ErrorCode::kZeroSamples, "Monte Carlo needs at least one sample");
  }
  const std::size_t n = game.size();
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean.assign(n, 0.0);
  std::vector<double> m2(n, 0.0);

  constexpr std::uint64_t kBlock = 4096;
  std::vector<double> marginals;
  for (std::uint64_t first = 0; first < samples; first += kBlock) {
    const std::size_t count = static_cast<std::size_t>(std::min(kBlock, samples - first));
    marginals.assign(count * n, 0.0);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
      std::vector<PlayerId> order(n);
      for (std::size_t k = begin; k < end; ++k) {
        std::iota(order.begin(), order.end(), PlayerId{0});
        SplitMix64 rng(SplitMix64::derive(seed, first + k));
        rng.shuffle(std::span<PlayerId>(order));
        const PayoffVector phi = marginal_vector(game, order);
        std::copy(phi.begin(), phi.end(), marginals.begin() + k * n);
      }
    }, 64);
    // Welford in sample order.
    for (std::size_t k = 0; k < count; ++k) {
      const double seen = static_cast<double>(first + k + 1);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = marginals[k * n + i];
        const double delta = x - est.mean[i];
        est.mean[i] += delta / seen;
        m2[i] += delta * (x - est.mean[i]);
      }
    }
  }

  est.std_error.assign(n, 0.0);
  if (samples > 1) {
    const double s = static_cast<double>(samples);
    for (std::size_t i = 0; i < n; ++i) {
      const double variance = std::max(0.0, m2[i] / (s - 1.0));
      est.std_error[i] = std::sqrt(variance / s);
    }
  }
  return est;
}

bool interchangeable(const WorthTable& table, PlayerId i, PlayerId j) {
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t total = std::uint64_t{1} << table.players();
  for (std::uint64_t s = 0; s < total; ++s) {
    if ((s & (bi | bj)) != 0) continue;
    if (std::abs(table[s | bi] - table[s | bj]) > kAxiomTolerance) return false;
  }
  return true;
}

bool null_player(const WorthTable& table, PlayerId i) {
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t total = std::uint64_t{1} << table.players();
  for (std::uint64_t s = 0; s < total; ++s) {
    if ((s & bi) != 0) continue;
    if (std::abs(table[s | bi] - table[s]) > kAxiomTolerance) return false;
  }
  return true;
}

AxiomReport check_axioms(const WorthTable& table,
                         std::span<const double> phi) {
  const std::size_t n = table.players();
  if (phi.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "payoff vector has " + std::to_string(phi.size()) +
                    " entries for " + std::to_string(n) + " players");
  }
  if (n > kMaxAxiomPlayers) {
    throw Error(ErrorCode::kTooLargeForEnumeration,
                std::to_string(n) + " players exceed the axiom-check bound " +
                    std::to_string(kMaxAxiomPlayers));
  }
  AxiomReport report;
  report.efficiency_gap = std::accumulate(phi.begin(), phi.end(), 0.0) - table.grand();
  report.efficiency = std::abs(report.efficiency_gap) <= kAxiomTolerance;

  for (PlayerId i = 0; i < n && report.symmetry; ++i) {
    for (PlayerId j = i + 1; j < n; ++j) {
      if (std::abs(phi[i] - phi[j]) <= kAxiomTolerance) continue;
      if (interchangeable(table, i, j)) {
        report.symmetry = false;
        report.asymmetric_pair = {i, j};
        break;
      }
    }
  }
  for (PlayerId i = 0; i < n; ++i) {
    if (std::abs(phi[i]) > kAxiomTolerance && null_player(table, i)) {
      report.dummy = false;
      report.paid_null_player = i;
      break;
    }
  }
  return report;
}

AxiomReport check_axioms(const CoalitionalGame& game,
                         std::span<const double> phi) {
  if (phi.size() != game.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "payoff vector has " + std::to_string(phi.size()) +
                    " entries for " + std::to_string(game.size()) + " players");
  }
  if (game.size() > kMaxAxiomPlayers) {
    throw Error(ErrorCode::kTooLargeForEnumeration,
                std::to_string(game.size()) +
                    " players exceed the axiom-check bound " +
                    std::to_string(kMaxAxiomPlayers));
  }
  return check_axioms(game.tabulate(), phi);
}

}  // namespace coalition
