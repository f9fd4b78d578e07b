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

#ifndef COALITION_RUNNER_HPP
#define COALITION_RUNNER_HPP

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "coalition/scenario.hpp"

namespace coalition {

inline constexpr std::string_view kEngineName = "coalition";
inline constexpr std::string_view kEngineVersion = "0.1.0";

struct RunResult {
  // {"engine", "scenario", "analysis", "payload", "duration_seconds"}
  nlohmann::json document;
  // Human-readable table for standard error.
  std::string summary;
  // Sweep only: one row per grid point.
  std::optional<std::string> csv;
};

/// Runs the scenario's analysis. Engine errors propagate as coalition::Error.
RunResult run_scenario(const ScenarioSpec& spec);

/// Payload of one analysis, without timing or engine metadata. Deterministic
/// for a fixed spec.
nlohmann::json analysis_payload(const ScenarioSpec& spec, std::string* summary = nullptr);

/// Payload entry of one sweep point: exact Shapley division and provider
/// deviation for the given roster.
nlohmann::json sweep_point(const ScenarioSpec& spec, std::string_view axis, double value);

/// CSV companion of a sweep payload: header row, then
/// axis_value,total_worth,provider_payoff_sum,peer_payoff_sum,
/// peer_payoff_mean,max_deviation_gain,deviation_verdict.
std::string sweep_csv(const nlohmann::json& payload);

/// %.17g formatting used by the CSV and the summary tables.
std::string format_number(double x);

}  // namespace coalition

#endif  // COALITION_RUNNER_HPP
