// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scatterlab/scattering.hpp"
#include "scatterlab/states.hpp"

namespace scatterlab {

// Analytic Levy tail data for the scattered-state trace distance, optionally
// paired with an empirical tail estimate.
struct LevyBoundReport {
  double epsilon = 0.0;
  double offset = 0.0;  // mean-distance shift sqrt((d_B^2-1)/(d_B d_E+1))
  double bound = 0.0;   // 2 exp(-d_B d_E eps^2 / (18 pi^3))
  std::optional<double> empirical_tail;
  std::optional<long> n_samples;
};

// Generic Levy bound 2 exp(-(d+1) eps^2 / (9 pi^3 eta^2)) for an
// eta-Lipschitz function on the (2d-1)-sphere.
double levy_generic(long d, double epsilon, double eta);

// Eq-specific bound for the scattering distance, computed both from the
// generic lemma (sphere dimension 2 d_B d_E - 1, eta = 2) and from the
// closed form; the two routes are asserted to agree.
LevyBoundReport scattering_levy_bound(long d_boundary, long d_env, double epsilon);

// Upper bound on the Haar-mean of || Tr_E |phi><phi| - I/d_B ||_1.
double mean_distance_upper_bound(long d_boundary, long d_env);

// f(phi) = || Tr_E |phi><phi| - I/d_B ||_1 for one BE pure state.
double boundary_distance(const StateVector& phi_be, long d_boundary, long d_env);

// Per-draw boundary distances for Haar-uniform phi, one stream per sample.
std::vector<double> sample_boundary_distances(const TripartiteDims& dims, long n,
                                              const RngStream& rng, int threads = 1);

// Mean and SE of the boundary distance over n Haar draws.
MonteCarloEstimate empirical_mean_distance(const TripartiteDims& dims, long n,
                                           const RngStream& rng, int threads = 1);

// Fraction of n draws with distance >= epsilon + offset.  Each draw computes
// the distance both on the factored state rho_I tensor (marginal) and on the
// reduced form, asserting they agree within 1e-10.
LevyBoundReport empirical_tail(const DensityMatrix& rho_inner, const TripartiteDims& dims,
                               double epsilon, long n, const RngStream& rng, int threads = 1);

// (lhs, rhs) with lhs = |f(phi1) - f(phi2)| and rhs = 2 ||phi1 - phi2||_2;
// the Lipschitz lemma guarantees lhs <= rhs.
std::pair<double, double> lipschitz_witness(const StateVector& phi1, const StateVector& phi2,
                                            const TripartiteDims& dims);

// Sample standard deviation of the conditional purity at fixed initial state
// (GHZ or W system extended by fiducial qubits), swept over environment sizes.
struct FluctuationPoint {
  int n_env = 0;
  double purity_sd = 0.0;
  long n_samples = 0;
};

std::vector<FluctuationPoint> purity_fluctuation_sweep(StateFamily family, int n_inner,
                                                       int n_boundary,
                                                       const std::vector<int>& n_env_list,
                                                       long n, const RngStream& rng,
                                                       int threads = 1);

}  // namespace scatterlab
