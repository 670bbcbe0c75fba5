// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <iosfwd>
#include <string>

#include "scatterlab/rng.hpp"
#include "scatterlab/tensor.hpp"

namespace scatterlab {

enum class StateFamily {
  kGhz,
  kW,
  kProduct,
  kMaxEntangledIb,
  kRandomPure,
  kCustom,
};

// (|0...0> + |1...1>)/sqrt(2) on n qubits.
StateVector ghz(int n_qubits);

// Equal superposition of the n one-excitation basis states, amplitudes
// 1/sqrt(n) at flat indices 2^k.
StateVector w(int n_qubits);

// sum_j |j>_I |j>_B / sqrt(d_B); requires d_B <= d_I.
StateVector max_entangled_ib(long d_inner, long d_boundary);

// psi_sys tensor |0...0> on n_env_qubits fresh environment qubits.
StateVector fiducial_extend(const StateVector& psi_sys, int n_env_qubits);

// Computational basis state |index> in the given dimension.
StateVector basis_state(long dim, long index);

// Haar-uniform pure state: normalized vector of i.i.d. complex Gaussians.
StateVector random_pure_state(long dim, RngStream& rng);

// Amplitude file format: one line per amplitude, "re im", row order = flat
// index.  The vector is rejected unless its norm is within 1e-6 of 1, then
// renormalized exactly.
StateVector parse_amplitudes(std::istream& in);
StateVector load_amplitude_file(const std::string& path);

}  // namespace scatterlab
