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

#include "coalition/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "coalition/dynamics.hpp"
#include "coalition/error.hpp"
#include "coalition/kernels.hpp"
#include "coalition/parallel.hpp"
#include "coalition/rng.hpp"
#include "coalition/shapley.hpp"
#include "coalition/stability.hpp"

namespace coalition {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListedViolations = 1000;

json members_of(Coalition s) {
  json out = json::array();
  for (PlayerId i : s.members()) out.push_back(i);
  return out;
}

json anchor_json(std::int32_t anchor) {
  return anchor == CoalitionStructure::kUnattached ? json(nullptr) : json(anchor);
}

json structure_json(const CoalitionStructure& s) {
  json out = json::array();
  for (std::int32_t a : s.assignment()) out.push_back(anchor_json(a));
  return out;
}

Game build_game(const std::vector<PlayerKind>& players) {
  return make_game(std::vector<PlayerKind>(players));
}

CoalitionStructure structure_for(const Game& game, const ScenarioSpec& spec,
                                 bool fallback_unattached) {
  if (spec.structure) return CoalitionStructure::from_assignment(game, *spec.structure);
  return fallback_unattached ? CoalitionStructure::all_unattached(game)
                             : CoalitionStructure::round_robin(game);
}

std::string kind_name(const Game& game, PlayerId i) {
  return game.is_provider(i) ? "provider" : "peer";
}

void append_payoff_table(std::ostringstream& os, const Game& game,
                         const std::vector<double>& values, const char* label) {
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %-9s %24s\n", "player", "kind", label);
  os << line;
  for (PlayerId i = 0; i < values.size(); ++i) {
    std::snprintf(line, sizeof line, "%-8u %-9s %24.17g\n", i,
                  kind_name(game, i).c_str(), values[i]);
    os << line;
  }
}

json deviation_json(const DeviationReport& report) {
  json providers = json::array();
  for (const ProviderDeviation& d : report.providers) {
    providers.push_back({{"provider", d.provider},
                         {"grand_payoff", d.grand_payoff},
                         {"split_payoff", d.split_payoff},
                         {"gain", d.gain}});
  }
  return {{"stability_notion",
           "Shapley payoff in the grand coalition vs Shapley payoff of the "
           "subgame restricted to the provider's own block"},
          {"providers", providers},
          {"grand_resists", report.grand_resists}};
}

json shapley_payload(const Game& game, const ScenarioSpec& spec,
                     std::ostringstream& os) {
  const bool exact =
      spec.method == ShapleyMethod::kExact ||
      (spec.method == ShapleyMethod::kAuto && game.size() <= kMaxExactPlayers);
  if (exact) {
    const PayoffVector phi = shapley_exact(game);
    json out = {{"method", "exact"},
                {"grand_worth", game.worth(game.grand())},
                {"payoffs", phi}};
    if (game.size() <= kMaxAxiomPlayers) {
      const AxiomReport axioms = check_axioms(game, phi);
      out["axioms"] = {{"efficiency", axioms.efficiency},
                       {"symmetry", axioms.symmetry},
                       {"dummy", axioms.dummy}};
    }
    os << "shapley (exact), v(N) = " << format_number(game.worth(game.grand())) << "\n";
    append_payoff_table(os, game, phi, "payoff");
    return out;
  }
  const McEstimate est = shapley_montecarlo(game, spec.samples, spec.seed);
  os << "shapley (monte carlo, " << est.samples << " samples, seed " << est.seed << ")\n";
  append_payoff_table(os, game, est.mean, "mean");
  return {{"method", "montecarlo"},
          {"grand_worth", game.worth(game.grand())},
          {"mean", est.mean},
          {"std_error", est.std_error},
          {"samples", est.samples},
          {"seed", est.seed}};
}

json core_payload(const Game& game, const ScenarioSpec& spec, std::ostringstream& os) {
  const bool given = spec.payoff.has_value();
  const PayoffVector x = given ? *spec.payoff : shapley_exact(game);
  const CoreReport report = core_contains(game, x, spec.tolerance);
  json violations = json::array();
  for (std::size_t k = 0; k < std::min(kMaxListedViolations, report.violations.size()); ++k) {
    violations.push_back({{"coalition", members_of(report.violations[k].coalition)},
                          {"excess", report.violations[k].excess}});
  }
  json out = {{"payoff_source", given ? "given" : "shapley"},
              {"payoff", x},
              {"tolerance", spec.tolerance},
              {"is_member", report.is_member},
              {"efficiency_violated", report.efficiency_violated},
              {"violation_count", report.violations.size()},
              {"violations", violations}};
  if (game.size() <= kMaxCoreLpPlayers) {
    const auto witness = core_nonempty(game);
    out["core_nonempty"] = witness.has_value();
    out["witness"] = witness ? json(*witness) : json(nullptr);
  } else {
    out["core_nonempty"] = nullptr;
    out["witness"] = nullptr;
  }
  os << "core check of the " << (given ? "given" : "Shapley") << " payoff: "
     << (report.is_member ? "member" : "not a member") << ", "
     << report.violations.size() << " violated coalitions\n";
  if (!report.violations.empty()) {
    os << "largest excess " << format_number(report.violations.front().excess) << "\n";
  }
  return out;
}

json dynamics_payload(const Game& game, const ScenarioSpec& spec, std::ostringstream& os) {
  SimulationOptions options;
  options.max_steps = spec.max_steps;
  options.threshold = spec.threshold;
  options.seed = spec.seed;
  options.policy = spec.policy;
  const Trajectory traj = simulate(game, structure_for(game, spec, true), options);
  const TrajectoryMetrics metrics = measure(game, traj, spec.threshold);

  json states = json::array();
  for (const CoalitionStructure& s : traj.states) states.push_back(structure_json(s));
  json moves = json::array();
  for (const Move& m : traj.moves) {
    moves.push_back({{"peer", m.peer},
                     {"from", anchor_json(m.from)},
                     {"to", anchor_json(m.to)},
                     {"payoff_gain", m.payoff_gain}});
  }
  const char* kind = traj.outcome.kind == Outcome::Kind::kConverged ? "converged"
                     : traj.outcome.kind == Outcome::Kind::kCycle   ? "cycle"
                                                                    : "max_steps";
  json outcome = {{"kind", kind}, {"step", traj.outcome.step}};
  if (traj.outcome.kind == Outcome::Kind::kCycle) {
    outcome["cycle_length"] = traj.outcome.cycle_length;
  }
  const PayoffVector final_payoffs = peer_payoffs(game, traj.states.back());
  os << "dynamics: " << kind << " after " << traj.moves.size() << " moves\n";
  append_payoff_table(os, game, final_payoffs, "final payoff");
  return {{"states", states},
          {"moves", moves},
          {"outcome", outcome},
          {"final_payoffs", final_payoffs},
          {"metrics",
           {{"converged", metrics.converged},
            {"identical_peer_spread", metrics.identical_peer_spread},
            {"incumbent_loss_moves", metrics.incumbent_loss_moves},
            {"max_incumbent_loss", metrics.max_incumbent_loss}}}};
}

json sweep_payload(const ScenarioSpec& spec, std::ostringstream& os) {
  json points = json::array();
  for (double value : *spec.grid) points.push_back(sweep_point(spec, *spec.axis, value));
  json out = {{"axis", *spec.axis}, {"points", points}};
  os << sweep_csv(out);
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json sweep_point(const ScenarioSpec& spec, std::string_view axis, double value) {
  const Game game = build_game(apply_axis(spec.players, axis, value));
  const PayoffVector phi = shapley_exact(game);
  const CoalitionStructure structure =
      is_count_axis(axis) || !spec.structure ? CoalitionStructure::round_robin(game)
                                             : CoalitionStructure::from_assignment(game, *spec.structure);
  const DeviationReport deviation = provider_deviation(game, structure);

  double provider_sum = 0.0;
  double peer_sum = 0.0;
  for (PlayerId i = 0; i < game.size(); ++i) {
    (game.is_provider(i) ? provider_sum : peer_sum) += phi[i];
  }
  const std::size_t peers = game.peers().size();
  double max_gain = 0.0;
  for (std::size_t k = 0; k < deviation.providers.size(); ++k) {
    const double g = deviation.providers[k].gain;
    max_gain = k == 0 ? g : std::max(max_gain, g);
  }
  return {{"value", value},
          {"players", game.size()},
          {"structure", structure_json(structure)},
          {"total_worth", game.worth(game.grand())},
          {"payoffs", phi},
          {"provider_payoff_sum", provider_sum},
          {"peer_payoff_sum", peer_sum},
          {"peer_payoff_mean", peers == 0 ? 0.0 : peer_sum / static_cast<double>(peers)},
          {"max_deviation_gain", max_gain},
          {"deviation", deviation_json(deviation)}};
}

std::string sweep_csv(const json& payload) {
  std::string out =
      "axis_value,total_worth,provider_payoff_sum,peer_payoff_sum,"
      "peer_payoff_mean,max_deviation_gain,deviation_verdict\n";
  for (const json& p : payload.at("points")) {
    out += format_number(p.at("value").get<double>()) + ',' +
           format_number(p.at("total_worth").get<double>()) + ',' +
           format_number(p.at("provider_payoff_sum").get<double>()) + ',' +
           format_number(p.at("peer_payoff_sum").get<double>()) + ',' +
           format_number(p.at("peer_payoff_mean").get<double>()) + ',' +
           format_number(p.at("max_deviation_gain").get<double>()) + ',' +
           (p.at("deviation").at("grand_resists").get<bool>() ? "resists" : "breaks") +
           '\n';
  }
  return out;
}

json analysis_payload(const ScenarioSpec& spec, std::string* summary) {
  std::ostringstream os;
  json payload;
  if (spec.analysis == Analysis::kSweep) {
    payload = sweep_payload(spec, os);
  } else {
    const Game game = build_game(spec.players);
    switch (spec.analysis) {
      case Analysis::kShapley:
        payload = shapley_payload(game, spec, os);
        break;
      case Analysis::kCore:
        payload = core_payload(game, spec, os);
        break;
      case Analysis::kLeastCore: {
        const LeastCoreResult r = least_core(game);
        payload = {{"epsilon", r.epsilon}, {"witness", r.witness}};
        os << "least core epsilon = " << format_number(r.epsilon) << "\n";
        append_payoff_table(os, game, r.witness, "witness");
        break;
      }
      case Analysis::kDeviate: {
        const CoalitionStructure s = structure_for(game, spec, false);
        const DeviationReport r = provider_deviation(game, s);
        payload = deviation_json(r);
        payload["structure"] = structure_json(s);
        os << "provider deviation: grand coalition "
           << (r.grand_resists ? "resists" : "breaks") << "\n";
        for (const ProviderDeviation& d : r.providers) {
          os << "  provider " << d.provider << ": grand " << format_number(d.grand_payoff)
             << ", own block " << format_number(d.split_payoff) << ", gain "
             << format_number(d.gain) << "\n";
        }
        break;
      }
      case Analysis::kDynamics:
        payload = dynamics_payload(game, spec, os);
        break;
      case Analysis::kSweep:
        break;
    }
  }
  if (summary != nullptr) *summary = os.str();
  return payload;
}

RunResult run_scenario(const ScenarioSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json payload = analysis_payload(spec, &result.summary);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  if (spec.analysis == Analysis::kSweep) result.csv = sweep_csv(payload);
  result.document = {{"engine",
                      {{"name", kEngineName},
                       {"version", kEngineVersion},
                       {"simd", kernels::active().name},
                       {"rng", SplitMix64::kAlgorithm},
                       {"threads", worker_count()}}},
                     {"scenario", to_json(spec)},
                     {"analysis", to_string(spec.analysis)},
                     {"payload", std::move(payload)},
                     {"duration_seconds", elapsed.count()}};
  return result;
}

}  // namespace coalition
