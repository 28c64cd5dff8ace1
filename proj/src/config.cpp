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

#include "lyap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lyap/error.hpp"
#include "lyap/random.hpp"

namespace lyap {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) config_error(join(path, it.key()), "unknown key");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  return j;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) config_error(path, "must be finite");
  return x;
}

template <typename Int>
Int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) config_error(path, "expected an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (j.is_number_integer() && j.get<long long>() < 0) config_error(path, "must be >= 0");
  }
  return j.get<Int>();
}

template <typename T, typename Getter>
void read_if(const json& obj, const char* key, const std::string& path, T& out, Getter get) {
  if (auto it = obj.find(key); it != obj.end()) out = get(*it, join(path, key));
}

Complex complex_at(const json& j, const std::string& path) {
  if (j.is_number()) return {number_at(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) config_error(path, "expected a complex number [re, im]");
  return {number_at(j[0], index_path(path, 0)), number_at(j[1], index_path(path, 1))};
}

// Parses text, reporting syntax errors as "<source>:line:column: ...".
json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": JSON syntax error: " << e.what();
    throw Error(ErrorCode::ConfigError, os.str());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

ModelKind parse_model(const json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a string");
  const std::string name = j.get<std::string>();
  for (ModelKind kind : {ModelKind::PhotonLoss, ModelKind::Eq16, ModelKind::Eq18, ModelKind::Custom}) {
    if (to_string(kind) == name) return kind;
  }
  config_error(path, "unknown model '" + name + "' (photon_loss, eq16, eq18, custom)");
}

void parse_params(const json& j, const std::string& path, ExperimentConfig& cfg) {
  require_object(j, path);
  reject_unknown(j, path, {"u", "theta", "phi", "f_phi", "beta", "beta_imag", "kappa", "kappa_c", "nmax"});
  CatReservoirParams& p = cfg.params;
  read_if(j, "u", path, p.u, number_at);
  read_if(j, "theta", path, p.theta, number_at);
  read_if(j, "phi", path, p.phi, number_at);
  read_if(j, "f_phi", path, p.f_phi, number_at);
  read_if(j, "beta", path, p.beta, number_at);
  read_if(j, "beta_imag", path, cfg.beta_imag, number_at);
  read_if(j, "kappa", path, p.kappa, number_at);
  read_if(j, "kappa_c", path, p.kappa_c, number_at);
  read_if(j, "nmax", path, p.nmax, integer_at<int>);
}

void parse_custom(const json& j, const std::string& path, const std::filesystem::path& base_dir,
                  ExperimentConfig& cfg) {
  require_object(j, path);
  if (auto it = j.find("file"); it != j.end()) {
    reject_unknown(j, path, {"file"});
    if (!it->is_string()) config_error(join(path, "file"), "expected a path string");
    std::filesystem::path file = it->get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    if (!std::filesystem::exists(file)) config_error(join(path, "file"), "'" + file.string() + "' does not exist");
    parse_custom(read_json_file(file), file.string(), file.parent_path(), cfg);
    return;
  }
  reject_unknown(j, path, {"hamiltonian", "jumps"});
  if (auto it = j.find("hamiltonian"); it != j.end()) {
    cfg.custom_hamiltonian = matrix_from_json(*it, join(path, "hamiltonian"));
  }
  cfg.custom_jumps.clear();
  if (auto it = j.find("jumps"); it != j.end()) {
    if (!it->is_array()) config_error(join(path, "jumps"), "expected an array of matrices");
    for (std::size_t k = 0; k < it->size(); ++k) {
      cfg.custom_jumps.push_back(matrix_from_json((*it)[k], index_path(join(path, "jumps"), k)));
    }
  }
}

void parse_integrator(const json& j, const std::string& path, ExperimentConfig& cfg) {
  require_object(j, path);
  reject_unknown(j, path, {"h", "t_end", "sample_every"});
  read_if(j, "h", path, cfg.h, number_at);
  read_if(j, "t_end", path, cfg.t_end, number_at);
  read_if(j, "sample_every", path, cfg.sample_every, integer_at<long>);
}

void parse_measure(const json& j, const std::string& path, ExperimentConfig& cfg) {
  if (!j.is_array() || j.empty()) config_error(path, "expected a non-empty array of [s, w] atoms");
  cfg.measure.clear();
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = index_path(path, k);
    const json& atom = j[k];
    if (atom.is_array() && atom.size() == 2) {
      cfg.measure.push_back({number_at(atom[0], index_path(p, 0)), number_at(atom[1], index_path(p, 1))});
    } else if (atom.is_object()) {
      reject_unknown(atom, p, {"s", "w"});
      if (!atom.contains("s") || !atom.contains("w")) config_error(p, "atom needs s and w");
      cfg.measure.push_back({number_at(atom["s"], join(p, "s")), number_at(atom["w"], join(p, "w"))});
    } else {
      config_error(p, "expected [s, w] or {\"s\": .., \"w\": ..}");
    }
  }
}

InitialStateSpec parse_initial_state(const json& j, const std::string& path) {
  using Kind = InitialStateSpec::Kind;
  InitialStateSpec spec;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "vacuum") spec.kind = Kind::Vacuum;
    else if (name == "mixed") spec.kind = Kind::Mixed;
    else if (name == "random") spec.kind = Kind::Random;
    else config_error(path, "unknown initial state '" + name + "' (vacuum, mixed, random, or an object)");
    return spec;
  }
  if (!j.is_object() || j.size() != 1) {
    config_error(path, "expected a name or a single-key object (coherent, cat2, inline, random)");
  }
  const std::string key = j.begin().key();
  const json& value = j.begin().value();
  const std::string p = join(path, key);
  if (key == "coherent") {
    spec.kind = Kind::Coherent;
    spec.alpha = complex_at(value, p);
  } else if (key == "cat2") {
    spec.kind = Kind::Cat2;
    spec.alpha = complex_at(value, p);
  } else if (key == "inline") {
    spec.kind = Kind::Inline;
    spec.matrix = matrix_from_json(value, p);
  } else if (key == "random") {
    spec.kind = Kind::Random;
    spec.seed = integer_at<std::uint64_t>(value, p);
  } else {
    config_error(p, "unknown initial state kind");
  }
  return spec;
}

void parse_contraction(const json& j, const std::string& path, ContractionSuiteConfig& c) {
  require_object(j, path);
  reject_unknown(j, path, {"channels", "pairs", "dim", "unitary_channels", "dual_checks", "measures",
                           "measure_atoms", "generators", "generator_dim", "generator_jumps", "t_end", "h"});
  read_if(j, "channels", path, c.channels, integer_at<int>);
  read_if(j, "pairs", path, c.pairs, integer_at<int>);
  read_if(j, "dim", path, c.dim, integer_at<int>);
  read_if(j, "unitary_channels", path, c.unitary_channels, integer_at<int>);
  read_if(j, "dual_checks", path, c.dual_checks, integer_at<int>);
  read_if(j, "measures", path, c.measures, integer_at<int>);
  read_if(j, "measure_atoms", path, c.measure_atoms, integer_at<int>);
  read_if(j, "generators", path, c.generators, integer_at<int>);
  read_if(j, "generator_dim", path, c.generator_dim, integer_at<int>);
  read_if(j, "generator_jumps", path, c.generator_jumps, integer_at<int>);
  read_if(j, "t_end", path, c.t_end, number_at);
  read_if(j, "h", path, c.h, number_at);
}

void parse_cat_demo(const json& j, const std::string& path, CatDemoConfig& c) {
  require_object(j, path);
  reject_unknown(j, path, {"consistency_theta", "consistency_nmax", "frame_iterations", "random_states",
                           "quadrature_nodes"});
  read_if(j, "consistency_theta", path, c.consistency_theta, number_at);
  read_if(j, "consistency_nmax", path, c.consistency_nmax, integer_at<int>);
  read_if(j, "frame_iterations", path, c.frame_iterations, integer_at<int>);
  read_if(j, "random_states", path, c.random_states, integer_at<int>);
  read_if(j, "quadrature_nodes", path, c.quadrature_nodes, integer_at<int>);
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PhotonLoss: return "photon_loss";
    case ModelKind::Eq16: return "eq16";
    case ModelKind::Eq18: return "eq18";
    case ModelKind::Custom: return "custom";
  }
  return "unknown";
}

std::string InitialStateSpec::label() const {
  auto complex_label = [](Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
  };
  switch (kind) {
    case Kind::Vacuum: return "vacuum";
    case Kind::Coherent: return "coherent(" + complex_label(alpha) + ")";
    case Kind::Cat2: return "cat2(" + complex_label(alpha) + ")";
    case Kind::Mixed: return "mixed";
    case Kind::Inline: return "inline";
    case Kind::Random: return seed ? "random(" + std::to_string(*seed) + ")" : "random";
  }
  return "unknown";
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json initial_state_to_json(const InitialStateSpec& spec) {
  using Kind = InitialStateSpec::Kind;
  switch (spec.kind) {
    case Kind::Vacuum: return "vacuum";
    case Kind::Mixed: return "mixed";
    case Kind::Coherent: return {{"coherent", {spec.alpha.real(), spec.alpha.imag()}}};
    case Kind::Cat2: return {{"cat2", {spec.alpha.real(), spec.alpha.imag()}}};
    case Kind::Inline: return {{"inline", matrix_to_json(spec.matrix)}};
    case Kind::Random: return spec.seed ? json{{"random", *spec.seed}} : json("random");
  }
  return nullptr;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) config_error(path, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = index_path(path, i);
    if (!j[i].is_array() || j[i].size() != n) config_error(row_path, "expected a row of " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = complex_at(j[i][k], index_path(row_path, k));
  }
  return m;
}

void ExperimentConfig::validate() const {
  auto check = [](bool ok, const char* field, const std::string& what) {
    if (!ok) config_error(field, what);
  };
  check(h > 0.0, "integrator.h", "must be > 0");
  check(t_end >= h, "integrator.t_end", "must be >= integrator.h");
  check(sample_every >= 1, "integrator.sample_every", "must be >= 1");
  check(jobs >= 1, "jobs", "must be >= 1");
  check(params.nmax >= 2, "params.nmax", "must be >= 2");
  check(params.kappa > 0.0 || model == ModelKind::Custom, "params.kappa", "must be > 0");
  check(params.kappa_c >= 0.0, "params.kappa_c", "must be >= 0");
  check(params.beta >= 0.0, "params.beta", "must be >= 0");
  check(params.u >= 0.0 && params.u <= 2.0 * std::numbers::pi, "params.u", "must lie in [0, 2 pi]");
  check(params.theta >= 0.0 && params.theta <= 2.0 * std::numbers::pi, "params.theta", "must lie in [0, 2 pi]");
  for (std::size_t k = 0; k < measure.size(); ++k) {
    if (!(measure[k].s >= 0.0 && measure[k].s <= 1.0)) config_error(index_path("measure", k), "s must lie in [0, 1]");
    if (!(measure[k].w > 0.0)) config_error(index_path("measure", k), "w must be > 0");
  }
  if (measure.empty()) config_error("measure", "needs at least one atom");
  if (model == ModelKind::Custom) {
    check(custom_hamiltonian.size() > 0 || !custom_jumps.empty(), "custom", "needs a hamiltonian or jumps");
    const Index d = custom_hamiltonian.size() > 0 ? custom_hamiltonian.rows() : custom_jumps.front().rows();
    for (std::size_t k = 0; k < custom_jumps.size(); ++k) {
      if (custom_jumps[k].rows() != d) config_error(index_path("custom.jumps", k), "dimension mismatch");
    }
    if (custom_hamiltonian.size() > 0 && hermiticity_defect(custom_hamiltonian) > kHermitianTolerance) {
      config_error("custom.hamiltonian", "is not Hermitian");
    }
  }
  const Index d = dim();
  for (std::size_t k = 0; k < initial_states.size(); ++k) {
    const InitialStateSpec& s = initial_states[k];
    if (s.kind == InitialStateSpec::Kind::Inline && s.matrix.rows() != d) {
      config_error(index_path("initial_states", k), "inline state has dimension " +
                                                       std::to_string(s.matrix.rows()) + ", model has " +
                                                       std::to_string(d));
    }
  }
  const ContractionSuiteConfig& c = contraction;
  check(c.channels >= 0 && c.pairs >= 0 && c.unitary_channels >= 0 && c.dual_checks >= 0 &&
            c.measures >= 0 && c.generators >= 0,
        "contraction", "counts must be >= 0");
  check(c.dim >= 1 && c.generator_dim >= 1, "contraction", "dimensions must be >= 1");
  check(c.measure_atoms >= 1, "contraction.measure_atoms", "must be >= 1");
  check(c.generator_jumps >= 0, "contraction.generator_jumps", "must be >= 0");
  check(c.h > 0.0 && c.t_end >= c.h, "contraction", "need h > 0 and t_end >= h");
  check(cat_demo.consistency_theta > 0.0 && cat_demo.consistency_theta <= 0.1,
        "cat_demo.consistency_theta", "must lie in (0, 0.1]");
  check(cat_demo.consistency_nmax >= 2, "cat_demo.consistency_nmax", "must be >= 2");
  check(cat_demo.frame_iterations >= 1, "cat_demo.frame_iterations", "must be >= 1");
  check(cat_demo.random_states >= 0, "cat_demo.random_states", "must be >= 0");
  check(cat_demo.quadrature_nodes >= 2, "cat_demo.quadrature_nodes", "must be >= 2");
}

Index ExperimentConfig::dim() const {
  if (model == ModelKind::Custom) {
    if (custom_hamiltonian.size() > 0) return custom_hamiltonian.rows();
    if (!custom_jumps.empty()) return custom_jumps.front().rows();
    return 0;
  }
  return params.nmax + 1;
}

LindbladGenerator ExperimentConfig::generator() const {
  switch (model) {
    case ModelKind::PhotonLoss:
      return generator_eq18(0.0, params.kappa, 0.0, params.nmax);
    case ModelKind::Eq16:
      return generator_eq16(Complex(params.beta, beta_imag), params.kappa, params.nmax);
    case ModelKind::Eq18:
      return generator_eq18(params);
    case ModelKind::Custom: {
      const Index d = dim();
      const ComplexMatrix h = custom_hamiltonian.size() > 0 ? custom_hamiltonian : ComplexMatrix::Zero(d, d);
      return LindbladGenerator(h, custom_jumps);
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown model");
}

json ExperimentConfig::to_json() const {
  json j;
  j["model"] = std::string(to_string(model));
  j["params"] = {{"u", params.u},         {"theta", params.theta}, {"phi", params.phi},
                 {"f_phi", params.f_phi}, {"beta", params.beta},   {"beta_imag", beta_imag},
                 {"kappa", params.kappa}, {"kappa_c", params.kappa_c}, {"nmax", params.nmax}};
  if (model == ModelKind::Custom) {
    json jumps = json::array();
    for (const ComplexMatrix& l : custom_jumps) jumps.push_back(matrix_to_json(l));
    j["custom"] = {{"hamiltonian", matrix_to_json(custom_hamiltonian)}, {"jumps", jumps}};
  }
  j["integrator"] = {{"h", h}, {"t_end", t_end}, {"sample_every", sample_every}};
  json atoms = json::array();
  for (const PetzAtom& a : measure) atoms.push_back({a.s, a.w});
  j["measure"] = atoms;
  json states = json::array();
  for (const InitialStateSpec& s : initial_states) states.push_back(initial_state_to_json(s));
  j["initial_states"] = states;
  j["seed"] = seed;
  j["jobs"] = jobs;
  j["output_dir"] = output_dir.generic_string();
  const ContractionSuiteConfig& c = contraction;
  j["contraction"] = {{"channels", c.channels},
                      {"pairs", c.pairs},
                      {"dim", c.dim},
                      {"unitary_channels", c.unitary_channels},
                      {"dual_checks", c.dual_checks},
                      {"measures", c.measures},
                      {"measure_atoms", c.measure_atoms},
                      {"generators", c.generators},
                      {"generator_dim", c.generator_dim},
                      {"generator_jumps", c.generator_jumps},
                      {"t_end", c.t_end},
                      {"h", c.h}};
  j["cat_demo"] = {{"consistency_theta", cat_demo.consistency_theta},
                   {"consistency_nmax", cat_demo.consistency_nmax},
                   {"frame_iterations", cat_demo.frame_iterations},
                   {"random_states", cat_demo.random_states},
                   {"quadrature_nodes", cat_demo.quadrature_nodes}};
  return j;
}

ConfigOverrides ConfigOverrides::from_json(const json& j) {
  ConfigOverrides o;
  if (j.is_null()) return o;
  require_object(j, "overrides");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    const std::string path = "overrides." + it.key();
    const json& v = it.value();
    if (key == "nmax") o.nmax = integer_at<int>(v, path);
    else if (key == "beta") o.beta = number_at(v, path);
    else if (key == "kappa") o.kappa = number_at(v, path);
    else if (key == "kappa_c") o.kappa_c = number_at(v, path);
    else if (key == "h") o.h = number_at(v, path);
    else if (key == "t_end") o.t_end = number_at(v, path);
    else if (key == "seed") o.seed = integer_at<std::uint64_t>(v, path);
    else if (key == "jobs") o.jobs = integer_at<int>(v, path);
    else if (key == "output_dir") {
      if (!v.is_string()) config_error(path, "expected a string");
      o.output_dir = v.get<std::string>();
    } else {
      config_error(path, "unknown override");
    }
  }
  return o;
}

void ConfigOverrides::apply(ExperimentConfig& cfg) const {
  if (nmax) cfg.params.nmax = *nmax;
  if (beta) cfg.params.beta = *beta;
  if (kappa) cfg.params.kappa = *kappa;
  if (kappa_c) cfg.params.kappa_c = *kappa_c;
  if (h) cfg.h = *h;
  if (t_end) cfg.t_end = *t_end;
  if (seed) cfg.seed = *seed;
  if (jobs) cfg.jobs = *jobs;
  if (output_dir) cfg.output_dir = *output_dir;
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  require_object(j, "<root>");
  reject_unknown(j, "", {"model", "params", "custom", "integrator", "measure", "initial_states", "seed",
                         "jobs", "output_dir", "contraction", "cat_demo"});
  cfg.source = j;
  if (auto it = j.find("model"); it != j.end()) cfg.model = parse_model(*it, "model");
  if (auto it = j.find("params"); it != j.end()) parse_params(*it, "params", cfg);
  if (auto it = j.find("custom"); it != j.end()) parse_custom(*it, "custom", base_dir, cfg);
  if (cfg.model == ModelKind::Custom && !j.contains("custom")) config_error("custom", "required when model is custom");
  if (auto it = j.find("integrator"); it != j.end()) parse_integrator(*it, "integrator", cfg);
  if (auto it = j.find("measure"); it != j.end()) parse_measure(*it, "measure", cfg);
  if (auto it = j.find("initial_states"); it != j.end()) {
    if (!it->is_array()) config_error("initial_states", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      cfg.initial_states.push_back(parse_initial_state((*it)[k], index_path("initial_states", k)));
    }
  }
  read_if(j, "seed", "", cfg.seed, integer_at<std::uint64_t>);
  read_if(j, "jobs", "", cfg.jobs, integer_at<int>);
  if (auto it = j.find("output_dir"); it != j.end()) {
    if (!it->is_string()) config_error("output_dir", "expected a string");
    std::filesystem::path out = it->get<std::string>();
    cfg.output_dir = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
  }
  if (auto it = j.find("contraction"); it != j.end()) parse_contraction(*it, "contraction", cfg.contraction);
  if (auto it = j.find("cat_demo"); it != j.end()) parse_cat_demo(*it, "cat_demo", cfg.cat_demo);
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  return parse_config(parse_json_text(text, "<config>"), base_dir);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::ConfigError, "config file '" + path.string() + "' does not exist");
  }
  return parse_config(read_json_file(path), path.parent_path());
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t index) {
  // splitmix64 over the combined key.
  std::uint64_t z = seed ^ (suite * 0x9E3779B97F4A7C15ULL) ^ ((index + 1) * 0xD1B54A32D192ED03ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DensityMatrix make_initial_state(const InitialStateSpec& spec, Index dim, std::uint64_t seed,
                                 std::size_t index) {
  using Kind = InitialStateSpec::Kind;
  const int nmax = static_cast<int>(dim) - 1;
  switch (spec.kind) {
    case Kind::Vacuum:
      return DensityMatrix::fock(dim, 0);
    case Kind::Coherent:
      return DensityMatrix::pure(coherent_state(spec.alpha, nmax).ket);
    case Kind::Cat2: {
      // (|alpha> + i|-alpha>)/norm: component k = 1 sits at -alpha, k = 2 at alpha.
      const double c = 1.0 / std::sqrt(2.0);
      const Complex coeffs[] = {Complex(0.0, c), Complex(c, 0.0)};
      return DensityMatrix::pure(cat_state(spec.alpha, coeffs, nmax).ket);
    }
    case Kind::Mixed:
      return DensityMatrix::maximally_mixed(dim);
    case Kind::Inline:
      try {
        return DensityMatrix(spec.matrix);
      } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError,
                    "field 'initial_states[" + std::to_string(index) + "]': " + e.what());
      }
    case Kind::Random: {
      Rng rng(spec.seed ? *spec.seed : stream_seed(seed, 1, index));
      return DensityMatrix(random_density(rng, dim));
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown initial state");
}

}  // namespace lyap
