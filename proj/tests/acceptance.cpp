// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Acceptance gate: one self-contained check per release criterion, each
// printing a single pass/fail line.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scatterlab/concentration.hpp"
#include "scatterlab/experiments.hpp"
#include "scatterlab/haar.hpp"
#include "scatterlab/purity_analytics.hpp"
#include "scatterlab/scattering.hpp"
#include "scatterlab/states.hpp"
#include "scatterlab/tensor.hpp"

namespace {

using namespace scatterlab;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr std::uint64_t kSeed = 42;
constexpr double kDecouplingDistanceMax = 0.05;
constexpr double kSlopeTarget = -0.5;
constexpr double kSlopeTol = 0.15;
constexpr double kDecouplingBudgetSec = 120.0;
constexpr double kPuritySigma = 4.0;
constexpr double kPurityBudgetSec = 300.0;
constexpr double kOracleTol = 1e-10;
constexpr double kSeparableTol = 1e-12;
constexpr double kMomentZMax = 4.0;
constexpr double kMomentBudgetSec = 60.0;
constexpr double kTailSigma = 3.0;
constexpr double kMeanDistSigma = 3.0;
constexpr double kFiducialTol = 1e-12;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Criterion 1: Haar-averaged scattering decouples the boundary.  For 20
// random initial states (10 product, 10 globally entangled) on qubit dims
// (2,2,2) and (2,2,4), the Monte Carlo average over 2e4 draws must sit within
// trace distance 0.05 of rho_I (x) I/d_B and the convergence exponent fitted
// across sample sizes must be -0.5 +/- 0.15.  Each checkpoint averages its
// own independent draws so the fitted points are uncorrelated.
// Budget: 2 minutes.
Outcome criterion_decoupling() {
  const auto t0 = Clock::now();
  const long n = 20000;
  const std::vector<long> checkpoints = quarter_decade_checkpoints(n);
  double worst_final = 0.0, slope_lo = 1e300, slope_hi = -1e300;
  int bad = 0;
  for (int k = 0; k < 20; ++k) {
    const TripartiteDims dims = TripartiteDims::qubits(1, 1, (k % 2 == 0) ? 1 : 2);
    RngStream state_rng(kSeed, 500 + static_cast<std::uint64_t>(k));
    Vector amps;
    if (k < 10) {
      const Vector a = random_pure_state(dims.d_inner, state_rng).amplitudes();
      const Vector b = random_pure_state(dims.d_boundary, state_rng).amplitudes();
      const Vector c = random_pure_state(dims.d_env, state_rng).amplitudes();
      amps = kron(kron(a, b), c);
    } else {
      amps = random_pure_state(dims.total(), state_rng).amplitudes();
    }
    const StateVector psi(amps);
    std::vector<double> distances;
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
      const std::uint64_t stream = 2000 + 16 * static_cast<std::uint64_t>(k) + j;
      distances.push_back(decoupling_run(psi, dims, {checkpoints[j]},
                                         RngStream(kSeed, stream), 1)
                              .final_distance);
    }
    const double final_distance = distances.back();  // the full n = 2e4 average
    const double slope = fit_loglog_slope(checkpoints, distances);
    worst_final = std::max(worst_final, final_distance);
    slope_lo = std::min(slope_lo, slope);
    slope_hi = std::max(slope_hi, slope);
    if (final_distance > kDecouplingDistanceMax ||
        std::abs(slope - kSlopeTarget) > kSlopeTol)
      ++bad;
  }
  const double dt = seconds_since(t0);
  Outcome out;
  out.passed = bad == 0 && dt < kDecouplingBudgetSec;
  out.detail = "20 states: max final distance " + num(worst_final) + " (<= 0.05), slopes [" +
               num(slope_lo) + ", " + num(slope_hi) + "] (in -0.5 +/- 0.15), " + num(dt) +
               "s (< 120s)";
  return out;
}

// Criterion 2: the closed-form mean conditional purity matches Monte Carlo
// within 4 standard errors over 1e4 draws for six benchmark states.
// Budget: 5 minutes.
Outcome criterion_purity_formulas() {
  const auto t0 = Clock::now();
  struct Case {
    const char* label;
    StateFamily family;
    int ni, nb, ne;
    bool fiducial;
    double analytic;  // pinned closed-form value
  };
  const Case cases[] = {
      {"product", StateFamily::kProduct, 1, 1, 1, false, 0.8},
      {"ghz3", StateFamily::kGhz, 1, 1, 1, false, 0.6},
      {"w3", StateFamily::kW, 1, 1, 1, false, 28.0 / 45.0},
      {"ghz-fiducial", StateFamily::kGhz, 1, 2, 2, true, 6.0 / 17.0},
      {"w-fiducial", StateFamily::kW, 1, 2, 2, true, 56.0 / 153.0},
      {"maxent-ib", StateFamily::kMaxEntangledIb, 1, 1, 1, false, 0.6},
  };
  Outcome out;
  double worst_z = 0.0;
  const char* worst = "";
  int idx = 0;
  for (const Case& c : cases) {
    ExperimentConfig cfg;
    cfg.family = c.family;
    cfg.n_inner = c.ni;
    cfg.n_boundary = c.nb;
    cfg.n_env = c.ne;
    cfg.fiducial = c.fiducial;
    cfg.seed = kSeed;
    TripartiteDims dims(1, 1, 1);
    const StateVector psi = build_family_state(cfg, &dims);
    const double analytic = analytic_mean_purity(cfg, psi, dims);
    if (std::abs(analytic - c.analytic) > 1e-12) {
      out.passed = false;
      out.detail = std::string(c.label) + ": analytic " + num(analytic) +
                   " != pinned " + num(c.analytic);
      return out;
    }
    const MonteCarloEstimate est = mc_mean_purity(
        psi, dims, 10000, RngStream(kSeed, 700 + static_cast<std::uint64_t>(idx++)), 1);
    const double z = std::abs(est.mean - analytic) / est.standard_error;
    if (z > worst_z) {
      worst_z = z;
      worst = c.label;
    }
    if (z > kPuritySigma) out.passed = false;
  }
  const double dt = seconds_since(t0);
  if (dt >= kPurityBudgetSec) out.passed = false;
  out.detail = "6 states x 1e4 draws: worst |z| " + num(worst_z) + " (" + worst +
               ", <= 4), " + num(dt) + "s (< 300s)";
  return out;
}

// Criterion 3: independent analytic routes agree.  The general mean-purity
// evaluation of a product psi_IB (x) psi_E must match the Schmidt-coefficient
// form to 1e-10, and Delta - Gamma must vanish to 1e-12 on I|BE-separable
// states.
Outcome criterion_oracle_equivalence() {
  Outcome out;
  const long d_env = 3;
  double worst_pair = 0.0;
  RngStream rng(kSeed, 750);
  for (const auto& [d_i, d_b] : std::vector<std::pair<long, long>>{{2, 2}, {4, 2}}) {
    const TripartiteDims dims(d_i, d_b, d_env);
    for (int r = 0; r < 200; ++r) {
      const Vector ib = random_pure_state(d_i * d_b, rng).amplitudes();
      const Vector env = random_pure_state(d_env, rng).amplitudes();
      const double via_general = mean_purity_pure(StateVector(kron(ib, env)), dims);
      const double via_schmidt =
          mean_purity_schmidt(schmidt(StateVector(ib), d_i, d_b), d_b,
                              static_cast<double>(d_env), d_i);
      worst_pair = std::max(worst_pair, std::abs(via_general - via_schmidt));
    }
  }
  double worst_gap = 0.0;
  const TripartiteDims sep_dims(2, 2, 4);
  for (int r = 0; r < 200; ++r) {
    const Vector inner = random_pure_state(sep_dims.d_inner, rng).amplitudes();
    const Vector be = random_pure_state(sep_dims.boundary_env(), rng).amplitudes();
    const DeltaGamma dg = delta_gamma(StateVector(kron(inner, be)), sep_dims);
    worst_gap = std::max(worst_gap, std::abs(dg.difference()));
  }
  out.passed = worst_pair <= kOracleTol && worst_gap <= kSeparableTol;
  out.detail = "400 pure IB states: max |general - Schmidt| " + num(worst_pair) +
               " (<= 1e-10); 200 separable states: max |Delta-Gamma| " + num(worst_gap) +
               " (<= 1e-12)";
  return out;
}

// Criterion 4: Haar moment estimates at d in {2,4,8} over 1e5 draws match
// the Weingarten values (|z| <= 4) and the zero-pattern monomials vanish.
// Budget: 1 minute.
Outcome criterion_haar_moments() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kMoments;
  cfg.moment_dims = {2, 4, 8};
  cfg.n_samples = 100000;
  cfg.seed = kSeed;
  std::ostringstream csv;
  const ExperimentReport rep = run_moments(cfg, csv);
  double worst_z = 0.0;
  long rows = 0;
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string f;
    for (int i = 0; i <= 11; ++i) std::getline(fields, f, ',');
    worst_z = std::max(worst_z, std::stod(f));
    ++rows;
  }
  const double dt = seconds_since(t0);
  Outcome out;
  out.passed = rep.passed && worst_z <= kMomentZMax && dt < kMomentBudgetSec;
  out.detail = std::to_string(rows) + " monomials x 1e5 draws: worst |z| " + num(worst_z) +
               " (<= 4), " + num(dt) + "s (< 60s)";
  return out;
}

// Criterion 5: measure concentration.  Empirical tails stay under the Levy
// bound (+3 binomial SE), the mean boundary distance stays under
// sqrt((d_B^2-1)/(d_B d_E+1)) (+3 SE), and the Lipschitz inequality
// |f(phi1)-f(phi2)| <= 2||phi1-phi2|| has zero violations on 1e5 pairs.
Outcome criterion_concentration() {
  Outcome out;
  const long n = 10000;
  const std::vector<double> eps_grid{0.1, 0.3, 0.5, 1.0};
  double worst_margin = -1e9;  // max of tail - (bound + 3 se); negative is good
  int dims_idx = 0;
  double worst_mean_margin = -1e9;
  for (long d_env : {2L, 64L, 512L}) {
    const TripartiteDims dims(1, 2, d_env);
    const DensityMatrix rho_inner(Matrix::Identity(1, 1));
    const RngStream root(kSeed, 800 + static_cast<std::uint64_t>(dims_idx++));
    for (double eps : eps_grid) {
      const LevyBoundReport rep = empirical_tail(rho_inner, dims, eps, n, root, 1);
      const double tail = *rep.empirical_tail;
      const double se = std::sqrt(tail * (1.0 - tail) / static_cast<double>(n));
      worst_margin = std::max(worst_margin, tail - (rep.bound + kTailSigma * se));
    }
    const MonteCarloEstimate mean_dist = empirical_mean_distance(dims, n, root, 1);
    const double bound = mean_distance_upper_bound(dims.d_boundary, dims.d_env);
    worst_mean_margin = std::max(
        worst_mean_margin,
        mean_dist.mean - (bound + kMeanDistSigma * mean_dist.standard_error));
  }
  long violations = 0;
  RngStream pair_rng(kSeed, 850);
  const TripartiteDims lip_dims(1, 2, 4);
  for (long r = 0; r < 100000; ++r) {
    const StateVector phi1 = random_pure_state(lip_dims.boundary_env(), pair_rng);
    const StateVector phi2 = random_pure_state(lip_dims.boundary_env(), pair_rng);
    const auto [lhs, rhs] = lipschitz_witness(phi1, phi2, lip_dims);
    if (lhs > rhs) ++violations;
  }
  out.passed = worst_margin <= 0.0 && worst_mean_margin <= 0.0 && violations == 0;
  out.detail = "tails at 3 dims x 4 eps: worst margin " + num(worst_margin) +
               " (<= 0); mean-distance margin " + num(worst_mean_margin) +
               " (<= 0); Lipschitz violations " + std::to_string(violations) + "/1e5";
  return out;
}

// Criterion 6: conditional-purity fluctuations shrink with environment size
// for the fiducial GHZ/W states: the sampled SD strictly decreases over
// N_E in {1,2,6,10} with SD(10) < 0.1 SD(1), and N_E ~ 100 is covered by the
// closed form at d_E = 2^97 (the regime is out of simulation reach).
Outcome criterion_fluctuation_shrinkage() {
  Outcome out;
  std::string detail;
  int fam_idx = 0;
  for (StateFamily family : {StateFamily::kGhz, StateFamily::kW}) {
    const auto points = purity_fluctuation_sweep(
        family, 1, 2, {1, 2, 6, 10}, 1000,
        RngStream(kSeed, 900 + static_cast<std::uint64_t>(fam_idx++)), 1);
    for (std::size_t i = 1; i < points.size(); ++i)
      if (!(points[i].purity_sd < points[i - 1].purity_sd)) out.passed = false;
    if (!(points.back().purity_sd < 0.1 * points.front().purity_sd)) out.passed = false;

    // Analytic coverage of N_E ~ 100: mean purity at d_E = 2^97 has already
    // reached its infinite-environment limit, and the finite-d_E means
    // approach it monotonically through the simulated sweep.
    const double limit = family == StateFamily::kGhz ? 0.125 : 5.0 / 36.0;
    if (std::abs(mean_purity_fiducial(family, 2, 97) - limit) > kFiducialTol)
      out.passed = false;
    double prev_gap = 1e300;
    for (int ne : {1, 2, 6, 10, 97}) {
      const double gap = std::abs(mean_purity_fiducial(family, 2, ne) - limit);
      if (!(gap < prev_gap)) out.passed = false;
      prev_gap = gap;
    }
    detail += std::string(family == StateFamily::kGhz ? "ghz" : "w") + " SD(1)=" +
              num(points.front().purity_sd) + " SD(10)=" + num(points.back().purity_sd) +
              "; ";
  }
  bool simulable = true;
  try {
    TripartiteDims::qubits(1, 2, 97);
  } catch (const std::invalid_argument&) {
    simulable = false;
  }
  if (simulable) out.passed = false;
  out.detail = detail + "strict decrease, SD(10) < 0.1 SD(1), 2^97 analytic-only";
  return out;
}

// Criterion 7: equal config and seed give byte-identical CSV single-threaded,
// for every experiment kind.
Outcome criterion_determinism() {
  Outcome out;
  std::vector<ExperimentConfig> cfgs(4);
  cfgs[0].kind = ExperimentKind::kPurityScan;
  cfgs[0].n_samples = 1000;
  cfgs[1].kind = ExperimentKind::kDecoupling;
  cfgs[1].n_samples = 1000;
  cfgs[2].kind = ExperimentKind::kConcentration;
  cfgs[2].n_samples = 300;
  cfgs[3].kind = ExperimentKind::kMoments;
  cfgs[3].n_samples = 2000;
  cfgs[3].moment_dims = {2, 3};
  int identical = 0;
  for (ExperimentConfig& cfg : cfgs) {
    cfg.seed = kSeed;
    cfg.threads = 1;
    std::ostringstream a, b;
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    if (a.str() == b.str() && !a.str().empty()) ++identical;
  }
  out.passed = identical == 4;
  out.detail = std::to_string(identical) + "/4 experiment kinds byte-identical on rerun";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"1 decoupling", criterion_decoupling},
      {"2 purity formulas", criterion_purity_formulas},
      {"3 oracle equivalence", criterion_oracle_equivalence},
      {"4 haar moments", criterion_haar_moments},
      {"5 concentration", criterion_concentration},
      {"6 fluctuation shrinkage", criterion_fluctuation_shrinkage},
      {"7 determinism", criterion_determinism},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out.passed = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    if (!out.passed) ++failures;
    std::cout << "criterion " << e.name << ": " << (out.passed ? "PASS" : "FAIL") << " ("
              << out.detail << ")\n";
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 7 acceptance criteria passed\n";
  return 0;
}
