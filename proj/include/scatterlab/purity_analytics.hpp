// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include "scatterlab/states.hpp"
#include "scatterlab/tensor.hpp"

namespace scatterlab {

// The two quadruple sums over the global pure-state amplitudes that control
// the mean scattered purity: Delta sums |psi|^2 |psi|^2 and Gamma the cross
// term, both over i != i' and (be) != (be)'.
struct DeltaGamma {
  double delta = 0.0;
  double gamma = 0.0;
  double difference() const { return delta - gamma; }
};

// Rearranged marginal-based evaluation, O(D * d_I); the default.
DeltaGamma delta_gamma(const StateVector& psi, const TripartiteDims& dims);

// Literal quadruple loop, O((d_I * d_B * d_E)^2); the trusted oracle for
// small systems.  Throws if the imaginary part of Gamma fails to vanish.
DeltaGamma delta_gamma_naive(const StateVector& psi, const TripartiteDims& dims);

// Mean scattered purity for a pure global state:
//   (d_B + d_E)/(d_B d_E + 1) + d_B (1 - d_E^2)/((d_B d_E)^2 - 1) * (Delta - Gamma).
// d_E may be an abstract dimension (e.g. 2^100) that is never realized as a
// Hilbert space; when the dims fit, the rational coefficients are formed in
// 128-bit integer arithmetic with one final division each.
double mean_purity_from_delta_gamma(long d_boundary, double d_env, double delta_minus_gamma);

// The same formula with Delta - Gamma computed from psi.
double mean_purity_pure(const StateVector& psi, const TripartiteDims& dims);

// Schmidt form: Delta - Gamma replaced by sum_{j != l} c_j^2 c_l^2 for the
// Schmidt coefficients of the IB state.  d_inner = 0 means "not supplied";
// when supplied the spectrum length is checked against min(d_I, d_B).
double mean_purity_schmidt(const SchmidtSpectrum& c, long d_boundary, double d_env,
                           long d_inner = 0);

// Product I|BE input: (d_B + d_E)/(d_B d_E + 1).
double mean_purity_product(long d_boundary, double d_env);

// Maximally entangled IB input: ((d_B^2 - 1) d_E + d_E^2 - 1)/(d_B^2 d_E^2 - 1).
double mean_purity_max_entangled(long d_boundary, double d_env);

// Infinite-environment limit (1/d_B)(1 - Delta + Gamma).
double mean_purity_limit(const StateVector& psi, const TripartiteDims& dims);

// GHZ_N with qubit split (n_inner, n_boundary, rest environment); the
// coefficient Delta - Gamma is 1/2 for every split.
double mean_purity_ghz(int n_total, int n_inner, int n_boundary);

// W_N with the same split; coefficient 2 n_I (N - n_I) / N^2.
double mean_purity_w(int n_total, int n_inner, int n_boundary);

// Three-qubit GHZ/W system extended by n_env fiducial |0> qubits, with
// system split (n_I, n_B) in {(1,2),(2,1)}.  family must be kGhz or kW.
double mean_purity_fiducial(StateFamily family, int n_boundary, int n_env);

}  // namespace scatterlab
