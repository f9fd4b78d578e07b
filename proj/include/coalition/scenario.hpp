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

#ifndef COALITION_SCENARIO_HPP
#define COALITION_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "coalition/dynamics.hpp"
#include "coalition/game.hpp"

namespace coalition {

enum class Analysis { kShapley, kCore, kLeastCore, kDeviate, kDynamics, kSweep };
enum class ShapleyMethod { kAuto, kExact, kMonteCarlo };

std::string_view to_string(Analysis a);
std::string_view to_string(ShapleyMethod m);
std::string_view to_string(Policy p);

/// A parsed and validated scenario file. Optional fields stay unset when the
/// file omits them so that echoing and re-parsing yields an equal spec.
struct ScenarioSpec {
  std::vector<PlayerKind> players;
  Analysis analysis = Analysis::kShapley;
  ShapleyMethod method = ShapleyMethod::kAuto;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 1000;
  double threshold = kDefaultSwitchThreshold;
  Policy policy = Policy::kRoundRobin;
  double tolerance = 1e-6;
  std::optional<std::vector<double>> payoff;
  // Per peer in ascending player order; kUnattached for null.
  std::optional<std::vector<std::int32_t>> structure;
  std::optional<std::string> axis;
  std::optional<std::vector<double>> grid;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Command-line overrides, applied before validation.
struct Overrides {
  std::optional<Analysis> analysis;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::string> axis;
  std::optional<std::string> grid;  // "a,b,step"
};

/// Throws kParseError (with line and column) or kValidationError (naming the
/// offending field).
ScenarioSpec parse_scenario(std::string_view text, const Overrides& overrides = {});

/// As parse_scenario; throws kFileNotFound.
ScenarioSpec load_scenario(const std::filesystem::path& path,
                           const Overrides& overrides = {});

nlohmann::json to_json(const ScenarioSpec& spec);

/// Expands "a,b,step" into a, a+step, ... up to b. Throws kValidationError.
std::vector<double> expand_grid(std::string_view text);

/// Roster with the named sweep axis set to `value`. Axes: providers, peers
/// (counts; the provider or peer list is repeated cyclically and the roster
/// becomes providers followed by peers), subscribers, revenue, demand, cost
/// (every provider), upload (every peer), and players[i].<field>.
/// Throws kValidationError.
std::vector<PlayerKind> apply_axis(const std::vector<PlayerKind>& players,
                                   std::string_view axis, double value);

bool is_count_axis(std::string_view axis);

}  // namespace coalition

#endif  // COALITION_SCENARIO_HPP
