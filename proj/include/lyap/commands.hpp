// Copyright 2026 The lyapcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Top-level experiments behind the CLI. Each command returns a JSON report
// and an exit code; CSV and report files go to the configured output
// directory. Reports are deterministic for a fixed config and seed: wall-clock
// timings are written to a separate timings.json.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lyap/config.hpp"

namespace lyap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitViolation = 4;

/// Slack allowed for contraction of the six distances and the dual spread.
inline constexpr double kContractionTolerance = 1e-9;

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitOk;
};

CommandResult cmd_simulate(const ExperimentConfig& cfg);
CommandResult cmd_steady_state(const ExperimentConfig& cfg);
CommandResult cmd_contraction(const ExperimentConfig& cfg);
CommandResult cmd_cat_demo(const ExperimentConfig& cfg);

inline constexpr std::string_view kCommandNames[] = {"simulate", "steady-state", "contraction",
                                                     "cat-demo"};

/// Loads the config (defaults when config_path is empty), applies overrides,
/// validates, runs the command and writes <output_dir>/report_<name>.json.
/// Never throws: errors become a report with "status": "error" and exit code
/// 2 (configuration) or 3 (numerical).
CommandResult run_command(std::string_view name, const std::filesystem::path& config_path,
                          const ConfigOverrides& overrides);

/// One line per sample, %.17g, LF endings.
void write_trajectory_csv(const std::filesystem::path& path, const std::vector<LyapunovSample>& samples);

}  // namespace lyap
