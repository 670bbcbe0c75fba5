// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/concentration.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatterlab/detail/parallel.hpp"

namespace scatterlab {

namespace {

constexpr double kPiCubed = std::numbers::pi * std::numbers::pi * std::numbers::pi;

Matrix boundary_marginal(const Vector& phi, long d_boundary, long d_env) {
  Matrix m = Matrix::Zero(d_boundary, d_boundary);
  for (long b = 0; b < d_boundary; ++b) {
    const auto x = phi.segment(b * d_env, d_env);
    for (long bp = 0; bp <= b; ++bp) {
      const Complex acc = phi.segment(bp * d_env, d_env).dot(x);
      m(b, bp) = acc;
      m(bp, b) = std::conj(acc);
    }
  }
  return m;
}

double distance_from_marginal(const Matrix& marginal, long d_boundary) {
  const Matrix eye =
      Matrix::Identity(d_boundary, d_boundary) / static_cast<double>(d_boundary);
  return trace_norm(marginal - eye);
}

}  // namespace

double levy_generic(long d, double epsilon, double eta) {
  if (d < 1) throw std::invalid_argument("levy_generic: d must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("levy_generic: epsilon must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("levy_generic: eta must be > 0");
  const double exponent = static_cast<double>(d + 1) * epsilon * epsilon /
                          (9.0 * kPiCubed * eta * eta);
  return 2.0 * std::exp(-exponent);
}

LevyBoundReport scattering_levy_bound(long d_boundary, long d_env, double epsilon) {
  if (d_boundary < 1 || d_env < 1)
    throw std::invalid_argument("scattering_levy_bound: dims must be >= 1");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("scattering_levy_bound: epsilon must be > 0");
  const double prod = static_cast<double>(d_boundary) * static_cast<double>(d_env);
  const double bound = 2.0 * std::exp(-prod * epsilon * epsilon / (18.0 * kPiCubed));
  // Same bound via the generic lemma: the conditional states live on the
  // (2 d_B d_E - 1)-sphere and the distance is 2-Lipschitz there.
  const double via_lemma = levy_generic(2 * d_boundary * d_env - 1, epsilon, 2.0);
  if (std::abs(bound - via_lemma) > 1e-12 * std::max(bound, 1e-300))
    throw std::logic_error("scattering_levy_bound: Eq-form and lemma-form disagree");
  LevyBoundReport report;
  report.epsilon = epsilon;
  report.offset = mean_distance_upper_bound(d_boundary, d_env);
  report.bound = bound;
  return report;
}

double mean_distance_upper_bound(long d_boundary, long d_env) {
  if (d_boundary < 1 || d_env < 1)
    throw std::invalid_argument("mean_distance_upper_bound: dims must be >= 1");
  const double db = static_cast<double>(d_boundary);
  const double de = static_cast<double>(d_env);
  return std::sqrt((db * db - 1.0) / (db * de + 1.0));
}

double boundary_distance(const StateVector& phi_be, long d_boundary, long d_env) {
  if (phi_be.dim() != d_boundary * d_env)
    throw std::invalid_argument("boundary_distance: state does not match dims");
  return distance_from_marginal(boundary_marginal(phi_be.amplitudes(), d_boundary, d_env),
                                d_boundary);
}

std::vector<double> sample_boundary_distances(const TripartiteDims& dims, long n,
                                              const RngStream& rng, int threads) {
  if (n < 1) throw std::invalid_argument("sample_boundary_distances: need n >= 1");
  const long d_b = dims.d_boundary, d_e = dims.d_env;
  std::vector<double> distances(static_cast<std::size_t>(n));
  detail::for_each_chunk(0, n, threads, [&](const detail::SampleChunk& c) {
    for (long s = c.begin; s < c.end; ++s) {
      RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
      const StateVector phi = random_pure_state(d_b * d_e, stream);
      distances[static_cast<std::size_t>(s)] =
          distance_from_marginal(boundary_marginal(phi.amplitudes(), d_b, d_e), d_b);
    }
  });
  return distances;
}

MonteCarloEstimate empirical_mean_distance(const TripartiteDims& dims, long n,
                                           const RngStream& rng, int threads) {
  const auto distances = sample_boundary_distances(dims, n, rng, threads);
  RunningStats stats;
  for (double d : distances) stats.add(d);
  return {stats.mean(), stats.standard_error(), stats.count()};
}

LevyBoundReport empirical_tail(const DensityMatrix& rho_inner, const TripartiteDims& dims,
                               double epsilon, long n, const RngStream& rng, int threads) {
  if (n < 1) throw std::invalid_argument("empirical_tail: need n >= 1");
  if (rho_inner.dim() != dims.d_inner)
    throw std::invalid_argument("empirical_tail: rho_I does not match dims");
  LevyBoundReport report = scattering_levy_bound(dims.d_boundary, dims.d_env, epsilon);
  const double threshold = epsilon + report.offset;
  const long d_b = dims.d_boundary, d_e = dims.d_env;
  const Matrix eye_b = Matrix::Identity(d_b, d_b) / static_cast<double>(d_b);
  const auto chunks = detail::make_chunks(0, n);
  std::vector<long> counts(chunks.size(), 0);
  detail::for_each_chunk(0, n, threads, [&](const detail::SampleChunk& c) {
    long hits = 0;
    for (long s = c.begin; s < c.end; ++s) {
      RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
      const StateVector phi = random_pure_state(d_b * d_e, stream);
      const Matrix marginal = boundary_marginal(phi.amplitudes(), d_b, d_e);
      const double reduced = distance_from_marginal(marginal, d_b);
      // Factored form on the full IB space; rho_I drops out of the distance.
      const double direct = trace_norm(kron(rho_inner.matrix(), marginal - eye_b));
      if (std::abs(direct - reduced) > 1e-10)
        throw std::runtime_error("empirical_tail: factored and reduced distances disagree");
      if (reduced >= threshold) ++hits;
    }
    counts[c.index] = hits;
  });
  long total = 0;
  for (long h : counts) total += h;
  report.empirical_tail = static_cast<double>(total) / static_cast<double>(n);
  report.n_samples = n;
  return report;
}

std::pair<double, double> lipschitz_witness(const StateVector& phi1, const StateVector& phi2,
                                            const TripartiteDims& dims) {
  const long dbe = dims.boundary_env();
  if (phi1.dim() != dbe || phi2.dim() != dbe)
    throw std::invalid_argument("lipschitz_witness: states do not match dims");
  const double f1 = boundary_distance(phi1, dims.d_boundary, dims.d_env);
  const double f2 = boundary_distance(phi2, dims.d_boundary, dims.d_env);
  const double rhs = 2.0 * (phi1.amplitudes() - phi2.amplitudes()).norm();
  return {std::abs(f1 - f2), rhs};
}

std::vector<FluctuationPoint> purity_fluctuation_sweep(StateFamily family, int n_inner,
                                                       int n_boundary,
                                                       const std::vector<int>& n_env_list,
                                                       long n, const RngStream& rng,
                                                       int threads) {
  if (n < 2) throw std::invalid_argument("purity_fluctuation_sweep: need n >= 2");
  StateVector base = [&] {
    switch (family) {
      case StateFamily::kGhz:
        return ghz(n_inner + n_boundary);
      case StateFamily::kW:
        return w(n_inner + n_boundary);
      default:
        throw std::invalid_argument("purity_fluctuation_sweep: family must be GHZ or W");
    }
  }();
  std::vector<FluctuationPoint> points;
  points.reserve(n_env_list.size());
  for (int n_env : n_env_list) {
    const StateVector psi = fiducial_extend(base, n_env);
    const TripartiteDims dims = TripartiteDims::qubits(n_inner, n_boundary, n_env);
    // Key the sweep point by its environment size so results do not depend on
    // the order of n_env_list.
    const auto purities = sample_conditional_purities(
        psi, dims, n, rng.substream(static_cast<std::uint64_t>(n_env)), threads);
    RunningStats stats;
    for (double p : purities) stats.add(p);
    points.push_back({n_env, stats.stddev(), stats.count()});
  }
  return points;
}

}  // namespace scatterlab
