// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/states.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace scatterlab {

namespace {

void check_qubits(int n, const char* who) {
  if (n < 1 || n > 22) throw std::invalid_argument(std::string(who) + ": need 1 <= n <= 22");
}

}  // namespace

StateVector ghz(int n_qubits) {
  check_qubits(n_qubits, "ghz");
  const long dim = 1L << n_qubits;
  Vector v = Vector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::numbers::sqrt2;
  return StateVector(std::move(v));
}

StateVector w(int n_qubits) {
  check_qubits(n_qubits, "w");
  const long dim = 1L << n_qubits;
  Vector v = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_qubits));
  for (int k = 0; k < n_qubits; ++k) v(1L << k) = amp;
  return StateVector(std::move(v));
}

StateVector max_entangled_ib(long d_inner, long d_boundary) {
  if (d_inner < 1 || d_boundary < 1)
    throw std::invalid_argument("max_entangled_ib: dimensions must be >= 1");
  if (d_boundary > d_inner)
    throw std::invalid_argument("max_entangled_ib: requires d_B <= d_I");
  if (d_inner > kMaxStateDim / d_boundary)
    throw std::invalid_argument("max_entangled_ib: dimension cap exceeded");
  Vector v = Vector::Zero(d_inner * d_boundary);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d_boundary));
  for (long j = 0; j < d_boundary; ++j) v(j * d_boundary + j) = amp;
  return StateVector(std::move(v));
}

StateVector fiducial_extend(const StateVector& psi_sys, int n_env_qubits) {
  if (n_env_qubits < 0 || n_env_qubits > 22)
    throw std::invalid_argument("fiducial_extend: need 0 <= n_env_qubits <= 22");
  const long d_env = 1L << n_env_qubits;
  if (psi_sys.dim() > kMaxStateDim / d_env)
    throw std::invalid_argument("fiducial_extend: dimension cap exceeded");
  Vector v = Vector::Zero(psi_sys.dim() * d_env);
  for (long i = 0; i < psi_sys.dim(); ++i) v(i * d_env) = psi_sys[i];
  return StateVector(std::move(v));
}

StateVector basis_state(long dim, long index) {
  if (dim < 1 || dim > kMaxStateDim) throw std::invalid_argument("basis_state: bad dimension");
  if (index < 0 || index >= dim) throw std::invalid_argument("basis_state: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector random_pure_state(long dim, RngStream& rng) {
  if (dim < 1 || dim > kMaxStateDim)
    throw std::invalid_argument("random_pure_state: bad dimension");
  Vector v(dim);
  double norm = 0.0;
  do {
    for (long i = 0; i < dim; ++i) v(i) = rng.gaussian_complex();
    norm = v.norm();
  } while (norm < 1e-150);  // unreachable in practice, keeps the division safe
  return StateVector(v / norm);
}

StateVector parse_amplitudes(std::istream& in) {
  std::vector<Complex> amps;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra))
      throw std::invalid_argument("amplitude file: line " + std::to_string(line_no) +
                                  " is not \"re im\"");
    amps.emplace_back(re, im);
  }
  if (amps.empty()) throw std::invalid_argument("amplitude file: no amplitudes");
  if (static_cast<long>(amps.size()) > kMaxStateDim)
    throw std::invalid_argument("amplitude file: dimension cap exceeded");
  Vector v = Eigen::Map<const Vector>(amps.data(), static_cast<long>(amps.size()));
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("amplitude file: norm deviates from 1 by more than 1e-6");
  return StateVector(v / norm);
}

StateVector load_amplitude_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("amplitude file: cannot open " + path);
  return parse_amplitudes(in);
}

}  // namespace scatterlab
