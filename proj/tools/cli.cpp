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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "coalition/error.hpp"
#include "coalition/runner.hpp"
#include "coalition/scenario.hpp"

namespace coalition::cli {
namespace {

namespace fs = std::filesystem;

// Write to a sibling temporary and rename, so readers never see a partial file.
void write_file(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kFileNotFound, "cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw Error(ErrorCode::kFileNotFound, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::kFileNotFound || code == ErrorCode::kParseError ||
         code == ErrorCode::kValidationError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coalitional analysis of multi-provider peer-assisted services", "coalition"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> max_steps;
  std::string axis;
  std::string grid;

  CLI::App* run_cmd = app.add_subcommand("run", "Run the analysis named in a scenario file");
  run_cmd->add_option("spec", spec_path, "Scenario JSON")->required();
  run_cmd->add_option("--out", out_path, "Result JSON path (default: standard output)");
  run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_option("--samples", samples, "Override the Monte Carlo sample count");
  run_cmd->add_option("--max-steps", max_steps, "Override the dynamics step cap");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep one scenario parameter");
  sweep_cmd->add_option("spec", spec_path, "Scenario JSON")->required();
  sweep_cmd->add_option("--axis", axis, "Parameter to sweep")->required();
  sweep_cmd->add_option("--grid", grid, "start,stop,step")->required();
  sweep_cmd->add_option("--out", out_path, "Result JSON path (default: standard output)");
  sweep_cmd->add_option("--csv", csv_path, "CSV path (default: --out with .csv extension)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Overrides overrides;
  overrides.seed = seed;
  overrides.samples = samples;
  overrides.max_steps = max_steps;
  const bool sweeping = sweep_cmd->parsed();
  if (sweeping) {
    overrides.analysis = Analysis::kSweep;
    overrides.axis = axis;
    overrides.grid = grid;
    if (csv_path.empty() && !out_path.empty()) {
      csv_path = fs::path(out_path).replace_extension(".csv").string();
      if (csv_path == out_path) csv_path += ".csv";
    }
  }

  ScenarioSpec spec;
  try {
    spec = load_scenario(spec_path, overrides);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  RunResult result;
  try {
    result = run_scenario(spec);
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      err << e.what() << "\n";
      return kExitValidation;
    }
    err << "ComputationError (" << to_string(spec.analysis) << "): " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "ComputationError (" << to_string(spec.analysis) << "): " << e.what() << "\n";
    return kExitComputation;
  }

  const std::string text = result.document.dump(2) + "\n";
  try {
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
    }
    if (result.csv && !csv_path.empty()) write_file(csv_path, *result.csv);
  } catch (const std::exception& e) {
    err << "cannot write output: " << e.what() << "\n";
    return kExitComputation;
  }
  err << result.summary;
  return kExitOk;
}

}  // namespace coalition::cli
