// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scatterlab {

// Default ceiling on d_B * d_E, the edge of the unitaries we sample.  The CLI
// can override it through SCATTERLAB_DIM_CAP.
inline constexpr long kDefaultDimCap = 4096;

// Ceiling on the total Hilbert space dimension for realized states.
inline constexpr long kMaxStateDim = 1L << 22;

// Ceiling on any dense matrix edge we are willing to materialize.
inline constexpr long kMaxMatrixDim = 1L << 14;

enum Subsystem : unsigned {
  kInner = 1u << 0,
  kBoundary = 1u << 1,
  kEnv = 1u << 2,
};

// Bitmask of Subsystem flags.
using SubsystemMask = unsigned;

inline constexpr SubsystemMask kAllSubsystems = kInner | kBoundary | kEnv;

// Dimension triple (d_I, d_B, d_E) with the fixed flattening convention used
// everywhere in this project: basis label (i, b, e) lives at flat index
//     i * d_B * d_E + b * d_E + e.
struct TripartiteDims {
  long d_inner = 1;
  long d_boundary = 1;
  long d_env = 1;

  TripartiteDims(long di, long db, long de, long cap = kDefaultDimCap)
      : d_inner(di), d_boundary(db), d_env(de) {
    if (di < 1 || db < 1 || de < 1)
      throw std::invalid_argument("TripartiteDims: dimensions must be >= 1");
    if (db > cap / de)  // overflow-safe d_B * d_E <= cap
      throw std::invalid_argument("TripartiteDims: d_B*d_E exceeds the dimension cap (" +
                                  std::to_string(cap) + ")");
    if (di > kMaxStateDim / (db * de))
      throw std::invalid_argument("TripartiteDims: total dimension exceeds " +
                                  std::to_string(kMaxStateDim));
  }

  long boundary_env() const { return d_boundary * d_env; }
  long inner_boundary() const { return d_inner * d_boundary; }
  long total() const { return d_inner * d_boundary * d_env; }

  long flat(long i, long b, long e) const {
    return (i * d_boundary + b) * d_env + e;
  }

  long dim(SubsystemMask kept) const {
    long d = 1;
    if (kept & kInner) d *= d_inner;
    if (kept & kBoundary) d *= d_boundary;
    if (kept & kEnv) d *= d_env;
    return d;
  }

  // First n_inner qubits are inner, the next n_boundary are boundary, the
  // last n_env are environment; consistent with the flat-index convention.
  static TripartiteDims qubits(int n_inner, int n_boundary, int n_env,
                               long cap = kDefaultDimCap) {
    if (n_inner < 0 || n_boundary < 0 || n_env < 0 || n_inner + n_boundary + n_env > 22)
      throw std::invalid_argument("TripartiteDims: qubit counts out of range");
    return TripartiteDims(1L << n_inner, 1L << n_boundary, 1L << n_env, cap);
  }

  bool operator==(const TripartiteDims&) const = default;
};

}  // namespace scatterlab
