// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scatterlab/experiments.hpp"

namespace {

using scatterlab::ConfigError;
using scatterlab::ExperimentConfig;
using scatterlab::ExperimentKind;

int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// CLI bindings for one subcommand; option pointers let the config file be
// applied first and explicit flags override it afterwards.
struct SubFlags {
  CLI::App* sub = nullptr;
  ExperimentKind kind = ExperimentKind::kPurityScan;

  int ni = 1, nb = 1, ne = 1;
  std::string family = "ghz";
  bool fiducial = false;
  long samples = 1000;
  std::uint64_t seed = scatterlab::kDefaultSeed;
  std::vector<double> epsilon;
  std::vector<long> dims;
  std::string state_file;
  int threads = default_threads();
  std::string out_path;
  std::string config_path;
  bool schema = false;

  CLI::Option* o_ni = nullptr;
  CLI::Option* o_nb = nullptr;
  CLI::Option* o_ne = nullptr;
  CLI::Option* o_family = nullptr;
  CLI::Option* o_fiducial = nullptr;
  CLI::Option* o_samples = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_epsilon = nullptr;
  CLI::Option* o_dims = nullptr;
  CLI::Option* o_state = nullptr;
  CLI::Option* o_threads = nullptr;
};

void add_common(CLI::App& app, SubFlags& f, ExperimentKind kind, const std::string& name,
                const std::string& desc) {
  f.kind = kind;
  f.sub = app.add_subcommand(name, desc);
  f.o_samples = f.sub->add_option("-n,--samples", f.samples, "Monte Carlo sample count");
  f.o_seed = f.sub->add_option("-s,--seed", f.seed, "RNG seed (default 42)");
  f.o_threads = f.sub->add_option("-t,--threads", f.threads,
                                  "worker threads (results are thread-count independent)");
  f.sub->add_option("-o,--out", f.out_path, "write CSV here instead of stdout");
  f.sub->add_option("-c,--config", f.config_path,
                    "JSON config file; explicit flags override its values");
  f.sub->add_flag("--schema", f.schema, "print the CSV header for this subcommand and exit");

  if (kind == ExperimentKind::kMoments) {
    f.o_dims = f.sub->add_option("-d,--dims", f.dims, "unitary dimensions to test")
                   ->delimiter(',');
    return;
  }
  f.o_ni = f.sub->add_option("--ni", f.ni, "inner qubits");
  f.o_nb = f.sub->add_option("--nb", f.nb, "boundary qubits");
  f.o_ne = f.sub->add_option("--ne", f.ne, "environment qubits (max 11)");
  f.o_family = f.sub->add_option(
      "-f,--family", f.family, "initial state: ghz|w|product|max-entangled|random|custom");
  f.o_fiducial = f.sub->add_flag("--fiducial", f.fiducial,
                                 "extend a 3-qubit ghz/w system by ne fiducial |0> qubits");
  f.o_state = f.sub->add_option("--state-file", f.state_file,
                                "amplitude file ('re im' per line) for --family custom");
  if (kind == ExperimentKind::kConcentration)
    f.o_epsilon = f.sub->add_option("-e,--epsilon", f.epsilon, "tail thresholds")
                      ->delimiter(',');
}

void apply_json_config(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "config root must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "ni") cfg.n_inner = val.get<int>();
      else if (key == "nb") cfg.n_boundary = val.get<int>();
      else if (key == "ne") cfg.n_env = val.get<int>();
      else if (key == "family") cfg.family = scatterlab::parse_family(val.get<std::string>());
      else if (key == "fiducial") cfg.fiducial = val.get<bool>();
      else if (key == "samples") cfg.n_samples = val.get<long>();
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "epsilon") cfg.epsilon_grid = val.get<std::vector<double>>();
      else if (key == "dims") cfg.moment_dims = val.get<std::vector<long>>();
      else if (key == "state_file") cfg.state_file = val.get<std::string>();
      else if (key == "threads") cfg.threads = val.get<int>();
      else throw ConfigError(key, "unknown config key");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, std::string("bad value: ") + e.what());
    }
  }
}

long dim_cap_from_env() {
  const char* raw = std::getenv("SCATTERLAB_DIM_CAP");
  if (!raw) return scatterlab::kDefaultDimCap;
  char* end = nullptr;
  const long cap = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || cap < 2)
    throw ConfigError("SCATTERLAB_DIM_CAP", "must be an integer >= 2");
  return cap;
}

ExperimentConfig build_config(const SubFlags& f) {
  ExperimentConfig cfg;
  cfg.kind = f.kind;
  cfg.threads = default_threads();
  cfg.dim_cap = dim_cap_from_env();
  if (!f.config_path.empty()) apply_json_config(cfg, f.config_path);
  if (f.o_ni && f.o_ni->count()) cfg.n_inner = f.ni;
  if (f.o_nb && f.o_nb->count()) cfg.n_boundary = f.nb;
  if (f.o_ne && f.o_ne->count()) cfg.n_env = f.ne;
  if (f.o_family && f.o_family->count()) cfg.family = scatterlab::parse_family(f.family);
  if (f.o_fiducial && f.o_fiducial->count()) cfg.fiducial = f.fiducial;
  if (f.o_samples->count()) cfg.n_samples = f.samples;
  if (f.o_seed->count()) cfg.seed = f.seed;
  if (f.o_epsilon && f.o_epsilon->count()) cfg.epsilon_grid = f.epsilon;
  if (f.o_dims && f.o_dims->count()) cfg.moment_dims = f.dims;
  if (f.o_state && f.o_state->count()) cfg.state_file = f.state_file;
  if (f.o_threads->count()) cfg.threads = f.threads;
  return cfg;
}

int run_one(const SubFlags& f) {
  if (f.schema) {
    std::cout << scatterlab::csv_header(f.kind) << "\n";
    return 0;
  }
  const ExperimentConfig cfg = build_config(f);
  scatterlab::validate(cfg);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!f.out_path.empty()) {
    file.open(f.out_path, std::ios::binary);  // binary: byte-identical reruns
    if (!file) throw ConfigError("out", "cannot open output file: " + f.out_path);
    out = &file;
  }
  const scatterlab::ExperimentReport report = scatterlab::run_experiment(cfg, *out);
  std::cerr << report.summary << "\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scatterlab: Monte Carlo laboratory for random quantum scattering"};
  app.require_subcommand(1);

  SubFlags sub[4];
  add_common(app, sub[0], ExperimentKind::kDecoupling, "decoupling",
             "trace distance of the Monte Carlo channel mean to rho_I x I/d_B");
  add_common(app, sub[1], ExperimentKind::kPurityScan, "purity-scan",
             "conditional boundary-purity samples vs the closed-form mean");
  add_common(app, sub[2], ExperimentKind::kConcentration, "concentration",
             "Levy tail bounds, mean boundary distance, and purity fluctuations");
  add_common(app, sub[3], ExperimentKind::kMoments, "moments",
             "Monte Carlo check of first- and second-order Haar moments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const SubFlags& f : sub)
      if (f.sub->parsed()) return run_one(f);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: field '" << e.field << "': " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
