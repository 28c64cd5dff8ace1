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

// JSON experiment configuration. Complex numbers are [re, im] pairs; a
// matrix is an array of rows. Errors carry the JSON path or the line and
// column of a syntax error and are raised as ConfigError.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyap/cat_reservoir.hpp"
#include "lyap/petz.hpp"

namespace lyap {

enum class ModelKind { PhotonLoss, Eq16, Eq18, Custom };

std::string_view to_string(ModelKind kind);

struct InitialStateSpec {
  enum class Kind { Vacuum, Coherent, Cat2, Mixed, Inline, Random };
  Kind kind = Kind::Vacuum;
  Complex alpha{0.0, 0.0};
  ComplexMatrix matrix;           // Inline
  std::optional<std::uint64_t> seed;  // Random; defaults to a stream of the global seed

  std::string label() const;
};

struct ContractionSuiteConfig {
  int channels = 100;
  int pairs = 20;
  int dim = 4;
  int unitary_channels = 20;
  int dual_checks = 50;
  int measures = 5;
  int measure_atoms = 5;
  int generators = 5;
  int generator_dim = 6;
  int generator_jumps = 2;
  double t_end = 2.0;
  double h = 1e-3;
};

struct CatDemoConfig {
  double consistency_theta = 0.05;
  int consistency_nmax = 20;
  int frame_iterations = 5;
  int random_states = 3;
  int quadrature_nodes = 400;
};

struct ExperimentConfig {
  ModelKind model = ModelKind::Eq18;
  CatReservoirParams params;
  double beta_imag = 0.0;  // eq16 only: beta = params.beta + i beta_imag
  ComplexMatrix custom_hamiltonian;
  std::vector<ComplexMatrix> custom_jumps;
  double h = 1e-3;
  double t_end = 20.0;
  long sample_every = 10;
  std::vector<PetzAtom> measure{{1.0, 1.0}};
  std::vector<InitialStateSpec> initial_states;  // empty: command defaults
  std::uint64_t seed = 20240601;
  int jobs = 1;
  std::filesystem::path output_dir = "lyap_out";
  ContractionSuiteConfig contraction;
  CatDemoConfig cat_demo;
  nlohmann::json source = nlohmann::json::object();  // as loaded, before overrides

  /// Throws ConfigError naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;

  LindbladGenerator generator() const;
  Index dim() const;
  PetzMeasure petz_measure() const { return PetzMeasure(measure); }
};

struct ConfigOverrides {
  std::optional<int> nmax;
  std::optional<double> beta;
  std::optional<double> kappa;
  std::optional<double> kappa_c;
  std::optional<double> h;
  std::optional<double> t_end;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> output_dir;

  /// Keys: nmax, beta, kappa, kappa_c (or kappa-c), h, t_end (or t-end),
  /// seed, jobs, output_dir (or output-dir).
  static ConfigOverrides from_json(const nlohmann::json& j);
  void apply(ExperimentConfig& cfg) const;
};

/// Parses a config document. Relative file references resolve against base_dir.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Inverse of the matrix encoding used in configs and reports.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

/// Deterministic, job-count-independent seed for stream `index` of `suite`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t index);

DensityMatrix make_initial_state(const InitialStateSpec& spec, Index dim, std::uint64_t seed,
                                 std::size_t index);

}  // namespace lyap
