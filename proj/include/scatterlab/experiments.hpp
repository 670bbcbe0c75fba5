// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatterlab/concentration.hpp"
#include "scatterlab/purity_analytics.hpp"
#include "scatterlab/scattering.hpp"
#include "scatterlab/states.hpp"

namespace scatterlab {

// Fixed default seed so every documented command is reproducible.
inline constexpr std::uint64_t kDefaultSeed = 42;

enum class ExperimentKind { kDecoupling, kPurityScan, kConcentration, kMoments };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kPurityScan;
  int n_inner = 1;
  int n_boundary = 1;
  int n_env = 1;
  StateFamily family = StateFamily::kGhz;
  bool fiducial = false;  // GHZ/W system extended by n_env fiducial qubits
  long n_samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> epsilon_grid = {0.1, 0.3, 0.5, 1.0};  // concentration
  std::vector<long> moment_dims = {2, 4, 8};                // moments
  std::string state_file;                                   // custom family
  int threads = 1;
  long dim_cap = kDefaultDimCap;
};

// Config validation failure; `field` names the offending config entry.
struct ConfigError : std::invalid_argument {
  ConfigError(std::string field_, const std::string& msg)
      : std::invalid_argument(msg), field(std::move(field_)) {}
  std::string field;
};

// Throws ConfigError on the first violated invariant.
void validate(const ExperimentConfig& cfg);

// Stable FNV-1a hash of the canonical config serialization; every CSV row
// carries it for provenance.
std::string serialize_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Name round-trips used by the CLI and the CSV columns.
std::string experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);
std::string family_name(StateFamily family);
StateFamily parse_family(const std::string& name);

// Fixed CSV header for each experiment (--schema contract).
std::string csv_header(ExperimentKind kind);

// The initial global state described by the config, plus its dims.  Random
// choices (product / random families) come from RngStream(seed, 1), separate
// from the Monte Carlo sample streams.
StateVector build_family_state(const ExperimentConfig& cfg, TripartiteDims* dims_out);

// Closed-form mean purity for the configured family (Eq. 10 specialization).
double analytic_mean_purity(const ExperimentConfig& cfg, const StateVector& psi,
                            const TripartiteDims& dims);

struct ExperimentReport {
  bool passed = true;
  std::string summary;
};

// Decoupling internals, exposed for tests and the acceptance suite.
struct DecouplingResult {
  std::vector<long> checkpoints;
  std::vector<double> distances;  // trace distance of the running MC mean
  double slope = 0.0;             // log-log fit of distance vs n
  double final_distance = 0.0;
  double inner_marginal_distance = 0.0;  // MC-mean inner marginal vs Tr_BE(rho)
};

std::vector<long> decade_checkpoints(long n);
std::vector<long> quarter_decade_checkpoints(long n);
double fit_loglog_slope(const std::vector<long>& ns, const std::vector<double>& ds);
DecouplingResult decoupling_run(const StateVector& psi, const TripartiteDims& dims,
                                const std::vector<long>& checkpoints, const RngStream& rng,
                                int threads = 1);

// CSV-producing experiment drivers; rows go to `out`, pass/fail of the
// statistical acceptance check comes back in the report.
ExperimentReport run_purity_scan(const ExperimentConfig& cfg, std::ostream& out);
ExperimentReport run_decoupling(const ExperimentConfig& cfg, std::ostream& out);
ExperimentReport run_concentration(const ExperimentConfig& cfg, std::ostream& out);
ExperimentReport run_moments(const ExperimentConfig& cfg, std::ostream& out);
ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace scatterlab
