// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/purity_analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace scatterlab {

namespace {

// Naive Delta/Gamma is quadratic in the total dimension; cap it at 12 qubits.
constexpr long kNaiveDimCap = 4096;

void check_delta_gamma_coeff(double dg) {
  // Delta - Gamma = 1 - Tr(rho_I^2) lies in [0, 1]; leave slack for rounding.
  if (!(dg >= -1e-6 && dg <= 1.0 + 1e-6))
    throw std::invalid_argument("mean purity: Delta - Gamma outside [0,1]");
}

double check_abstract_dim(double d_env, const char* who) {
  if (!(d_env >= 1.0) || d_env != std::floor(d_env))
    throw std::invalid_argument(std::string(who) + ": d_E must be a positive integer");
  return d_env;
}

bool fits_exact(long d_boundary, double d_env) {
  return d_boundary <= (1L << 31) && d_env <= static_cast<double>(1L << 31);
}

}  // namespace

DeltaGamma delta_gamma(const StateVector& psi, const TripartiteDims& dims) {
  if (psi.dim() != dims.total())
    throw std::invalid_argument("delta_gamma: state does not match dims");
  const long d_i = dims.d_inner, dbe = dims.boundary_env();
  const Vector& v = psi.amplitudes();
  // Write Delta = 1 - sum_i p_i^2 - sum_n q_n^2 + S and
  //       Gamma = Tr(rho_I^2) - sum_i p_i^2 - sum_n q_n^2 + S,
  // where p, q are the diagonal marginals and S = sum |psi|^4: expanding the
  // i != i', n != n' exclusions of the quadruple sums by inclusion-exclusion
  // collapses all four corner sums to marginal quantities.
  const Matrix rho_i = reduced_pure_raw(v, dims, kInner);
  const double tr_rho_i_sq = rho_i.squaredNorm();
  double sum_p_sq = 0.0;
  for (long i = 0; i < d_i; ++i) {
    const double p = rho_i(i, i).real();
    sum_p_sq += p * p;
  }
  double sum_q_sq = 0.0, quartic = 0.0;
  for (long n = 0; n < dbe; ++n) {
    double q = 0.0;
    for (long i = 0; i < d_i; ++i) {
      const double a2 = std::norm(v(i * dbe + n));
      q += a2;
      quartic += a2 * a2;
    }
    sum_q_sq += q * q;
  }
  const double shared = -sum_p_sq - sum_q_sq + quartic;
  return {1.0 + shared, tr_rho_i_sq + shared};
}

DeltaGamma delta_gamma_naive(const StateVector& psi, const TripartiteDims& dims) {
  if (psi.dim() != dims.total())
    throw std::invalid_argument("delta_gamma_naive: state does not match dims");
  if (dims.total() > kNaiveDimCap)
    throw std::invalid_argument("delta_gamma_naive: use the rearranged form above 12 qubits");
  const long d_i = dims.d_inner, dbe = dims.boundary_env();
  const Vector& v = psi.amplitudes();
  auto amp = [&](long i, long n) { return v(i * dbe + n); };
  double delta = 0.0;
  Complex gamma(0.0, 0.0);
  for (long i = 0; i < d_i; ++i)
    for (long ip = 0; ip < d_i; ++ip) {
      if (ip == i) continue;
      for (long n = 0; n < dbe; ++n)
        for (long np = 0; np < dbe; ++np) {
          if (np == n) continue;
          delta += std::norm(amp(i, n)) * std::norm(amp(ip, np));
          gamma += amp(i, n) * std::conj(amp(ip, n)) * amp(ip, np) * std::conj(amp(i, np));
        }
    }
  if (std::abs(gamma.imag()) > 1e-10)
    throw std::runtime_error("delta_gamma_naive: Gamma has non-vanishing imaginary part");
  return {delta, gamma.real()};
}

double mean_purity_from_delta_gamma(long d_boundary, double d_env, double delta_minus_gamma) {
  if (d_boundary < 1) throw std::invalid_argument("mean purity: d_B must be >= 1");
  check_abstract_dim(d_env, "mean purity");
  check_delta_gamma_coeff(delta_minus_gamma);
  if (static_cast<double>(d_boundary) * d_env < 2.0)
    throw std::invalid_argument("mean purity: formula requires d_B*d_E >= 2");
  if (fits_exact(d_boundary, d_env)) {
    const __int128 db = d_boundary;
    const __int128 de = static_cast<long>(d_env);
    const __int128 n1 = db + de;
    const __int128 d1 = db * de + 1;
    const __int128 n2 = db - db * de * de;  // d_B (1 - d_E^2)
    const __int128 d2 = (db * de) * (db * de) - 1;
    return static_cast<double>(n1) / static_cast<double>(d1) +
           static_cast<double>(n2) / static_cast<double>(d2) * delta_minus_gamma;
  }
  const double db = static_cast<double>(d_boundary);
  const double prod = db * d_env;
  return (db + d_env) / (prod + 1.0) +
         db * (1.0 - d_env * d_env) / (prod * prod - 1.0) * delta_minus_gamma;
}

double mean_purity_pure(const StateVector& psi, const TripartiteDims& dims) {
  const DeltaGamma dg = delta_gamma(psi, dims);
  return mean_purity_from_delta_gamma(dims.d_boundary, static_cast<double>(dims.d_env),
                                      dg.difference());
}

double mean_purity_schmidt(const SchmidtSpectrum& c, long d_boundary, double d_env,
                           long d_inner) {
  if (c.size() > d_boundary || (d_inner > 0 && c.size() > std::min(d_inner, d_boundary)))
    throw std::invalid_argument("mean_purity_schmidt: spectrum longer than min(d_I, d_B)");
  double dg = 0.0;
  for (long j = 0; j < c.size(); ++j)
    for (long l = 0; l < c.size(); ++l) {
      if (l == j) continue;
      dg += c[j] * c[j] * c[l] * c[l];
    }
  return mean_purity_from_delta_gamma(d_boundary, d_env, dg);
}

double mean_purity_product(long d_boundary, double d_env) {
  if (d_boundary < 1) throw std::invalid_argument("mean_purity_product: d_B must be >= 1");
  check_abstract_dim(d_env, "mean_purity_product");
  if (fits_exact(d_boundary, d_env)) {
    const __int128 db = d_boundary;
    const __int128 de = static_cast<long>(d_env);
    return static_cast<double>(db + de) / static_cast<double>(db * de + 1);
  }
  return (static_cast<double>(d_boundary) + d_env) /
         (static_cast<double>(d_boundary) * d_env + 1.0);
}

double mean_purity_max_entangled(long d_boundary, double d_env) {
  if (d_boundary < 1)
    throw std::invalid_argument("mean_purity_max_entangled: d_B must be >= 1");
  check_abstract_dim(d_env, "mean_purity_max_entangled");
  if (d_boundary == 1 && d_env == 1.0) return 1.0;  // 0/0 in the formula; trivial case
  if (fits_exact(d_boundary, d_env)) {
    const __int128 db = d_boundary;
    const __int128 de = static_cast<long>(d_env);
    const __int128 num = (db * db - 1) * de + de * de - 1;
    const __int128 den = db * db * de * de - 1;
    return static_cast<double>(num) / static_cast<double>(den);
  }
  const double db2 = static_cast<double>(d_boundary) * static_cast<double>(d_boundary);
  return ((db2 - 1.0) * d_env + d_env * d_env - 1.0) / (db2 * d_env * d_env - 1.0);
}

double mean_purity_limit(const StateVector& psi, const TripartiteDims& dims) {
  const DeltaGamma dg = delta_gamma(psi, dims);
  return (1.0 - dg.difference()) / static_cast<double>(dims.d_boundary);
}

namespace {

double qubit_formula(int n_total, int n_inner, int n_boundary, double dg) {
  if (n_inner < 1 || n_boundary < 1 || n_inner + n_boundary > n_total)
    throw std::invalid_argument("mean purity: invalid qubit split");
  if (n_boundary > 30 || n_total > 1022)
    throw std::invalid_argument("mean purity: qubit counts out of range");
  const int n_env = n_total - n_inner - n_boundary;
  return mean_purity_from_delta_gamma(1L << n_boundary, std::ldexp(1.0, n_env), dg);
}

}  // namespace

double mean_purity_ghz(int n_total, int n_inner, int n_boundary) {
  return qubit_formula(n_total, n_inner, n_boundary, 0.5);
}

double mean_purity_w(int n_total, int n_inner, int n_boundary) {
  const double n = static_cast<double>(n_total);
  const double ni = static_cast<double>(n_inner);
  return qubit_formula(n_total, n_inner, n_boundary, 2.0 * ni * (n - ni) / (n * n));
}

double mean_purity_fiducial(StateFamily family, int n_boundary, int n_env) {
  if (n_boundary != 1 && n_boundary != 2)
    throw std::invalid_argument("mean_purity_fiducial: split must be (1,2) or (2,1)");
  if (n_env < 0 || n_env > 1019)
    throw std::invalid_argument("mean_purity_fiducial: n_env out of range");
  double dg = 0.0;
  if (family == StateFamily::kGhz)
    dg = 0.5;
  else if (family == StateFamily::kW)
    dg = 4.0 / 9.0;  // both 3-qubit splits give inner purity 5/9
  else
    throw std::invalid_argument("mean_purity_fiducial: family must be GHZ or W");
  return mean_purity_from_delta_gamma(1L << n_boundary, std::ldexp(1.0, n_env), dg);
}

}  // namespace scatterlab
