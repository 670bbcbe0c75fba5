// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "scatterlab/haar.hpp"
#include "scatterlab/rng.hpp"
#include "scatterlab/tensor.hpp"

namespace scatterlab {

// Streaming (count, mean, M2) accumulator with associative merge, so parallel
// partials can be combined in a fixed chunk order.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const long n = n_ + o.n_;
    const double d = o.mean_ - mean_;
    m2_ += o.m2_ + d * d * (static_cast<double>(n_) * static_cast<double>(o.n_) /
                            static_cast<double>(n));
    mean_ += d * static_cast<double>(o.n_) / static_cast<double>(n);
    n_ = n;
  }

  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  double standard_error() const {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  long n_samples = 0;
};

// One Monte Carlo draw of the scattering channel.
struct ScatterSample {
  long sample_index = 0;
  DensityMatrix conditional_state;
  double purity = 0.0;
  double trace_distance_to_unconditional = 0.0;
};

struct McAverageResult {
  DensityMatrix mean_state;
  double max_elementwise_deviation = 0.0;  // vs the closed-form unconditional state
  double trace_distance_to_unconditional = 0.0;
  long n_samples = 0;
};

// Single-unitary integrand Tr_E[(Iic U) rho (I ic U)^dag] -> state on I tensor B.
// The I tensor U conjugation is applied blockwise; the D x D unitary is never
// formed.  The public entry validates unitarity of u_be; the _raw variant
// trusts it.
Matrix apply_scattering_raw(const Matrix& rho, const Matrix& u_be, const TripartiteDims& dims);
DensityMatrix apply_scattering(const DensityMatrix& rho, const Matrix& u_be,
                               const TripartiteDims& dims);

// Same map for a pure global state, without forming the D x D density matrix.
DensityMatrix scatter_pure(const StateVector& psi, const Matrix& u_be,
                           const TripartiteDims& dims);

// Closed-form Haar average: rho_I tensor I/d_B.
DensityMatrix unconditional_state(const DensityMatrix& rho, const TripartiteDims& dims);
DensityMatrix unconditional_state(const StateVector& psi, const TripartiteDims& dims);

// Conditional state of a separable I|BE input: rho_I tensor Tr_E |phi><phi|.
DensityMatrix conditional_separable(const DensityMatrix& rho_inner, const StateVector& phi_be,
                                    const TripartiteDims& dims);

// Precomputed data for sampling conditional states of a fixed pure input.
// The BE slices of psi span an r <= min(d_I, d_BE) dimensional subspace; a
// Haar unitary acts on that span as a Haar isometry, so each draw needs a
// d_BE x r sample instead of a d_BE x d_BE one.
class PureScatterPlan {
 public:
  PureScatterPlan(const StateVector& psi, const TripartiteDims& dims);

  long rank() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }  // d_BE x r, orthonormal columns
  const TripartiteDims& dims() const { return dims_; }

  // Conditional rho_IB (raw, unvalidated) given the image of basis() under
  // the sampled unitary; image must be d_BE x r with orthonormal columns.
  Matrix conditional_raw(const Matrix& image) const;

  // Draws a Haar isometry image and returns the conditional state.
  Matrix sample_conditional_raw(RngStream& rng) const;

 private:
  TripartiteDims dims_;
  Matrix basis_;  // Q
  Matrix coeff_;  // Q^dag S, r x d_I
};

// Test hook for the Monte Carlo engines: replaces the Haar sampler.
using UnitaryGenerator = std::function<Matrix(long, RngStream&)>;

// Mean of apply_scattering over n Haar draws (one RngStream per sample
// index), plus its deviation from the closed-form unconditional state.
McAverageResult mc_average_state(const DensityMatrix& rho, const TripartiteDims& dims, long n,
                                 const RngStream& rng, int threads = 1,
                                 const UnitaryGenerator& generator = {});
McAverageResult mc_average_state(const StateVector& psi, const TripartiteDims& dims, long n,
                                 const RngStream& rng, int threads = 1);

// Mean and standard error of the conditional purity over n Haar draws.
MonteCarloEstimate mc_mean_purity(const DensityMatrix& rho, const TripartiteDims& dims, long n,
                                  const RngStream& rng, int threads = 1);
MonteCarloEstimate mc_mean_purity(const StateVector& psi, const TripartiteDims& dims, long n,
                                  const RngStream& rng, int threads = 1);

// Per-draw conditional purities, indexed by sample; identical for any thread
// count because sample k always uses rng.substream(k).
std::vector<double> sample_conditional_purities(const StateVector& psi,
                                                const TripartiteDims& dims, long n,
                                                const RngStream& rng, int threads = 1);

// One fully described draw (used for reporting and tests).
ScatterSample sample_scattering(const StateVector& psi, const TripartiteDims& dims,
                                const RngStream& rng, long sample_index);

}  // namespace scatterlab
