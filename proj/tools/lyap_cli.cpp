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

// lyap command-line front end. Thin wrapper over the C API: parses flags,
// forwards them as a JSON override object and prints the JSON report.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lyap/lyap.h"

namespace {

struct Flags {
  std::string config;
  std::optional<int> nmax;
  std::optional<double> beta, kappa, kappa_c, h, t_end;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> output_dir;

  nlohmann::json overrides() const {
    nlohmann::json o = nlohmann::json::object();
    if (nmax) o["nmax"] = *nmax;
    if (beta) o["beta"] = *beta;
    if (kappa) o["kappa"] = *kappa;
    if (kappa_c) o["kappa_c"] = *kappa_c;
    if (h) o["h"] = *h;
    if (t_end) o["t_end"] = *t_end;
    if (seed) o["seed"] = *seed;
    if (jobs) o["jobs"] = *jobs;
    if (output_dir) o["output_dir"] = *output_dir;
    return o;
  }
};

void add_flags(CLI::App* cmd, Flags& f) {
  // "-h" would clash with the step-size flag.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--config", f.config, "JSON config file (defaults used when omitted)");
  cmd->add_option("--nmax", f.nmax, "Fock truncation");
  cmd->add_option("--beta", f.beta, "drive amplitude");
  cmd->add_option("--kappa", f.kappa, "photon-loss rate");
  cmd->add_option("--kappa-c", f.kappa_c, "parity-conditioned loss rate");
  cmd->add_option("--h", f.h, "RK4 step");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_option("--output-dir", f.output_dir, "directory for CSV/JSON outputs");
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lyap");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("LYAP_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    if (level != "info") spdlog::warn("unknown LYAP_LOG value '{}', using info", level);
    spdlog::set_level(spdlog::level::info);
  }
}

void log_report(const nlohmann::json& report) {
  if (auto it = report.find("warnings"); it != report.end() && it->is_array()) {
    for (const auto& w : *it) spdlog::warn("{}", w.get<std::string>());
  }
  if (auto it = report.find("error"); it != report.end()) {
    spdlog::error("{}: {}", it->value("code", "error"), it->value("message", ""));
  }
  if (auto it = report.find("timings_file"); it != report.end()) {
    spdlog::debug("timings written to {}", it->get<std::string>());
  }
  spdlog::info("status: {}", report.value("status", "unknown"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov certification of Lindblad dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lyap_version());

  Flags flags;
  for (const char* name : {"simulate", "steady-state", "contraction", "cat-demo"}) {
    add_flags(app.add_subcommand(name), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  setup_logging();

  const std::string command = app.get_subcommands().front()->get_name();
  const std::string overrides = flags.overrides().dump();
  spdlog::debug("{} overrides {}", command, overrides);

  char* report = nullptr;
  int exit_code = 0;
  const lyap_status st = lyap_run_command(command.c_str(), flags.config.empty() ? nullptr : flags.config.c_str(),
                                          overrides.c_str(), &report, &exit_code);
  if (st != LYAP_OK) {
    spdlog::error("{}: {}", lyap_status_string(st), lyap_last_error());
    return 3;
  }
  std::cout << report;
  try {
    log_report(nlohmann::json::parse(report));
  } catch (const std::exception&) {
  }
  lyap_string_free(report);
  return exit_code;
}
