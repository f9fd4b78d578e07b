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

#include "coalition/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "coalition/error.hpp"

namespace coalition {

using nlohmann::json;

std::string_view to_string(Analysis a) {
  switch (a) {
    case Analysis::kShapley: return "shapley";
    case Analysis::kCore: return "core";
    case Analysis::kLeastCore: return "leastcore";
    case Analysis::kDeviate: return "deviate";
    case Analysis::kDynamics: return "dynamics";
    case Analysis::kSweep: return "sweep";
  }
  return "shapley";
}

std::string_view to_string(ShapleyMethod m) {
  switch (m) {
    case ShapleyMethod::kAuto: return "auto";
    case ShapleyMethod::kExact: return "exact";
    case ShapleyMethod::kMonteCarlo: return "montecarlo";
  }
  return "auto";
}

std::string_view to_string(Policy p) {
  return p == Policy::kRoundRobin ? "round_robin" : "random_order";
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kValidationError, "field \"" + field + "\": " + why);
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& value, const std::string& field,
                const std::array<Enum, N>& options) {
  if (!value.is_string()) invalid(field, "expected a string");
  const std::string text = value.get<std::string>();
  for (Enum option : options) {
    if (to_string(option) == text) return option;
  }
  invalid(field, "unknown value \"" + text + "\"");
}

double get_number(const json& value, const std::string& field) {
  if (!value.is_number()) invalid(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) invalid(field, "must be finite");
  return x;
}

double get_non_negative(const json& value, const std::string& field) {
  const double x = get_number(value, field);
  if (x < 0.0) invalid(field, "must be non-negative");
  return x;
}

std::uint64_t get_count(const json& value, const std::string& field) {
  if (!value.is_number_unsigned()) invalid(field, "expected a non-negative integer");
  return value.get<std::uint64_t>();
}

void reject_unknown(const json& object, const std::set<std::string>& known,
                    const std::string& prefix) {
  for (const auto& [key, _] : object.items()) {
    if (!known.contains(key)) invalid(prefix + key, "unknown field");
  }
}

const json& require(const json& object, const std::string& key,
                    const std::string& prefix) {
  auto it = object.find(key);
  if (it == object.end()) invalid(prefix + key, "missing");
  return *it;
}

PlayerKind parse_player(const json& entry, std::size_t index) {
  const std::string prefix = "players[" + std::to_string(index) + "].";
  if (!entry.is_object()) invalid(prefix.substr(0, prefix.size() - 1), "expected an object");
  const json& kind = require(entry, "kind", prefix);
  if (kind == "provider") {
    reject_unknown(entry, {"kind", "subscribers", "revenue", "demand", "cost"}, prefix);
    Provider p;
    p.subscribers = get_non_negative(require(entry, "subscribers", prefix), prefix + "subscribers");
    p.revenue_per_subscriber = get_non_negative(require(entry, "revenue", prefix), prefix + "revenue");
    p.demand_per_subscriber = get_non_negative(require(entry, "demand", prefix), prefix + "demand");
    p.server_cost_per_bandwidth = get_non_negative(require(entry, "cost", prefix), prefix + "cost");
    return p;
  }
  if (kind == "peer") {
    reject_unknown(entry, {"kind", "upload"}, prefix);
    return Peer{get_non_negative(require(entry, "upload", prefix), prefix + "upload")};
  }
  invalid(prefix + "kind", "expected \"provider\" or \"peer\"");
}

bool monotone(const std::vector<double>& grid) {
  if (grid.size() < 2) return true;
  const bool up = grid[1] > grid[0];
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (up ? !(grid[k] > grid[k - 1]) : !(grid[k] < grid[k - 1])) return false;
  }
  return true;
}

void validate_sweep(const ScenarioSpec& spec) {
  if (!spec.axis) invalid("axis", "required for a sweep");
  if (!spec.grid || spec.grid->empty()) invalid("grid", "must be a nonempty list");
  if (!monotone(*spec.grid)) invalid("grid", "must be strictly monotone");
  for (double value : *spec.grid) {
    // apply_axis validates the axis name and the value.
    (void)apply_axis(spec.players, *spec.axis, value);
  }
}

void validate(const ScenarioSpec& spec) {
  if (spec.players.empty()) invalid("players", "must list at least one player");
  if (spec.players.size() > kMaxPlayers) {
    invalid("players", "at most " + std::to_string(kMaxPlayers) + " players");
  }
  if (spec.samples == 0) invalid("samples", "must be at least 1");
  if (spec.max_steps == 0) invalid("max_steps", "must be at least 1");
  if (!(spec.threshold >= 0.0)) invalid("threshold", "must be non-negative");
  if (!(spec.tolerance >= 0.0)) invalid("tolerance", "must be non-negative");
  if (spec.payoff && spec.payoff->size() != spec.players.size()) {
    invalid("payoff", "needs one entry per player");
  }
  if (spec.structure) {
    std::vector<PlayerKind> roster = spec.players;
    const Game game = make_game(std::move(roster));
    try {
      (void)CoalitionStructure::from_assignment(game, *spec.structure);
    } catch (const Error& e) {
      invalid("structure", e.what());
    }
  }
  if (spec.analysis == Analysis::kSweep || spec.axis || spec.grid) {
    validate_sweep(spec);
  }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::vector<double> expand_grid(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string piece(text.substr(start, comma - start));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() ||
        !std::isfinite(value)) {
      invalid("grid", "expected \"start,stop,step\" numbers, got \"" + std::string(text) + "\"");
    }
    parts.push_back(value);
    start = comma + 1;
  }
  if (parts.size() != 3) invalid("grid", "expected \"start,stop,step\"");
  const double a = parts[0];
  const double b = parts[1];
  const double step = parts[2];
  if (step == 0.0) invalid("grid", "step must be nonzero");
  const double span = (b - a) / step;
  if (span < -1e-9) invalid("grid", "empty: step points away from stop");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (count > 1000000) invalid("grid", "more than 1e6 points");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = a + static_cast<double>(k) * step;
  return grid;
}

bool is_count_axis(std::string_view axis) {
  return axis == "providers" || axis == "peers";
}

std::vector<PlayerKind> apply_axis(const std::vector<PlayerKind>& players,
                                   std::string_view axis, double value) {
  if (!std::isfinite(value)) invalid("grid", "values must be finite");
  if (is_count_axis(axis)) {
    if (value < 0.0 || value != std::floor(value)) {
      invalid("grid", "a " + std::string(axis) + " count must be a non-negative integer");
    }
    std::vector<PlayerKind> providers;
    std::vector<PlayerKind> peers;
    for (const PlayerKind& k : players) {
      (std::holds_alternative<Provider>(k) ? providers : peers).push_back(k);
    }
    std::vector<PlayerKind>& scaled = axis == "providers" ? providers : peers;
    const auto count = static_cast<std::size_t>(value);
    if (scaled.empty() && count > 0) {
      invalid("axis", "no " + std::string(axis) + " to replicate");
    }
    if (count > kMaxPlayers) invalid("grid", "count exceeds the player limit");
    std::vector<PlayerKind> template_list = scaled;
    scaled.clear();
    for (std::size_t k = 0; k < count; ++k) {
      scaled.push_back(template_list[k % template_list.size()]);
    }
    std::vector<PlayerKind> out = providers;
    out.insert(out.end(), peers.begin(), peers.end());
    if (out.empty()) invalid("grid", "sweep point leaves no players");
    return out;
  }

  auto set_field = [&](PlayerKind& kind, std::string_view field) {
    if (value < 0.0) invalid("grid", "parameter values must be non-negative");
    if (auto* p = std::get_if<Provider>(&kind)) {
      if (field == "subscribers") p->subscribers = value;
      else if (field == "revenue") p->revenue_per_subscriber = value;
      else if (field == "demand") p->demand_per_subscriber = value;
      else if (field == "cost") p->server_cost_per_bandwidth = value;
      else return false;
      return true;
    }
    if (field == "upload") {
      std::get<Peer>(kind).upload_capacity = value;
      return true;
    }
    return false;
  };

  std::vector<PlayerKind> out = players;
  if (axis == "subscribers" || axis == "revenue" || axis == "demand" || axis == "cost") {
    for (PlayerKind& k : out) {
      if (std::holds_alternative<Provider>(k)) set_field(k, axis);
    }
    return out;
  }
  if (axis == "upload") {
    for (PlayerKind& k : out) {
      if (std::holds_alternative<Peer>(k)) set_field(k, axis);
    }
    return out;
  }
  constexpr std::string_view kPrefix = "players[";
  if (axis.starts_with(kPrefix)) {
    const std::size_t close = axis.find("].");
    std::size_t index = 0;
    if (close != std::string_view::npos) {
      const std::string_view digits = axis.substr(kPrefix.size(), close - kPrefix.size());
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
      if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size() &&
          index < out.size() && set_field(out[index], axis.substr(close + 2))) {
        return out;
      }
    }
  }
  invalid("axis", "\"" + std::string(axis) + "\" is not a numeric scenario parameter");
}

ScenarioSpec parse_scenario(std::string_view text, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": " + e.what());
  }
  if (!doc.is_object()) invalid("(root)", "expected a JSON object");
  reject_unknown(doc,
                 {"players", "analysis", "method", "samples", "seed", "max_steps",
                  "threshold", "policy", "tolerance", "payoff", "structure", "axis",
                  "grid"},
                 "");

  ScenarioSpec spec;
  const json& players = require(doc, "players", "");
  if (!players.is_array()) invalid("players", "expected an array");
  for (std::size_t i = 0; i < players.size(); ++i) {
    spec.players.push_back(parse_player(players[i], i));
  }
  if (auto it = doc.find("analysis"); it != doc.end()) {
    spec.analysis = parse_enum(*it, "analysis",
                               std::array{Analysis::kShapley, Analysis::kCore,
                                          Analysis::kLeastCore, Analysis::kDeviate,
                                          Analysis::kDynamics, Analysis::kSweep});
  }
  if (auto it = doc.find("method"); it != doc.end()) {
    spec.method = parse_enum(*it, "method",
                             std::array{ShapleyMethod::kAuto, ShapleyMethod::kExact,
                                        ShapleyMethod::kMonteCarlo});
  }
  if (auto it = doc.find("policy"); it != doc.end()) {
    spec.policy = parse_enum(*it, "policy",
                             std::array{Policy::kRoundRobin, Policy::kRandomOrder});
  }
  if (auto it = doc.find("samples"); it != doc.end()) spec.samples = get_count(*it, "samples");
  if (auto it = doc.find("seed"); it != doc.end()) spec.seed = get_count(*it, "seed");
  if (auto it = doc.find("max_steps"); it != doc.end()) spec.max_steps = get_count(*it, "max_steps");
  if (auto it = doc.find("threshold"); it != doc.end()) spec.threshold = get_non_negative(*it, "threshold");
  if (auto it = doc.find("tolerance"); it != doc.end()) spec.tolerance = get_non_negative(*it, "tolerance");
  if (auto it = doc.find("payoff"); it != doc.end()) {
    if (!it->is_array()) invalid("payoff", "expected an array of numbers");
    std::vector<double> x;
    for (std::size_t i = 0; i < it->size(); ++i) {
      x.push_back(get_number((*it)[i], "payoff[" + std::to_string(i) + "]"));
    }
    spec.payoff = std::move(x);
  }
  if (auto it = doc.find("structure"); it != doc.end()) {
    if (!it->is_array()) invalid("structure", "expected an array of provider indices or null");
    std::vector<std::int32_t> a;
    for (std::size_t j = 0; j < it->size(); ++j) {
      const json& e = (*it)[j];
      if (e.is_null()) {
        a.push_back(CoalitionStructure::kUnattached);
      } else if (e.is_number_unsigned() && e.get<std::uint64_t>() < kMaxPlayers) {
        a.push_back(static_cast<std::int32_t>(e.get<std::uint64_t>()));
      } else {
        invalid("structure[" + std::to_string(j) + "]", "expected a player index or null");
      }
    }
    spec.structure = std::move(a);
  }
  if (auto it = doc.find("axis"); it != doc.end()) {
    if (!it->is_string()) invalid("axis", "expected a string");
    spec.axis = it->get<std::string>();
  }
  if (auto it = doc.find("grid"); it != doc.end()) {
    if (!it->is_array()) invalid("grid", "expected an array of numbers");
    std::vector<double> g;
    for (std::size_t k = 0; k < it->size(); ++k) {
      g.push_back(get_number((*it)[k], "grid[" + std::to_string(k) + "]"));
    }
    spec.grid = std::move(g);
  }

  if (overrides.analysis) spec.analysis = *overrides.analysis;
  if (overrides.seed) spec.seed = *overrides.seed;
  if (overrides.samples) spec.samples = *overrides.samples;
  if (overrides.max_steps) spec.max_steps = *overrides.max_steps;
  if (overrides.axis) spec.axis = *overrides.axis;
  if (overrides.grid) spec.grid = expand_grid(*overrides.grid);

  try {
    validate(spec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidationError) throw;
    // Game construction errors name the offending player field.
    throw Error(ErrorCode::kValidationError, e.what());
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path,
                           const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), overrides);
}

json to_json(const ScenarioSpec& spec) {
  json players = json::array();
  for (const PlayerKind& k : spec.players) {
    if (const auto* p = std::get_if<Provider>(&k)) {
      players.push_back({{"kind", "provider"},
                         {"subscribers", p->subscribers},
                         {"revenue", p->revenue_per_subscriber},
                         {"demand", p->demand_per_subscriber},
                         {"cost", p->server_cost_per_bandwidth}});
    } else {
      players.push_back({{"kind", "peer"}, {"upload", std::get<Peer>(k).upload_capacity}});
    }
  }
  json out = {
      {"players", players},
      {"analysis", to_string(spec.analysis)},
      {"method", to_string(spec.method)},
      {"samples", spec.samples},
      {"seed", spec.seed},
      {"max_steps", spec.max_steps},
      {"threshold", spec.threshold},
      {"policy", to_string(spec.policy)},
      {"tolerance", spec.tolerance},
  };
  if (spec.payoff) out["payoff"] = *spec.payoff;
  if (spec.structure) {
    json a = json::array();
    for (std::int32_t v : *spec.structure) {
      if (v == CoalitionStructure::kUnattached) a.push_back(nullptr);
      else a.push_back(v);
    }
    out["structure"] = a;
  }
  if (spec.axis) out["axis"] = *spec.axis;
  if (spec.grid) out["grid"] = *spec.grid;
  return out;
}

}  // namespace coalition
