// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <optional>

#include "scatterlab/rng.hpp"
#include "scatterlab/tensor.hpp"

namespace scatterlab {

// The five index patterns with non-vanishing second-order Haar moments.
enum class MomentCase {
  kP2DistinctDirect,   //  1 / (d^2 - 1)
  kP2DistinctSwapped,  // -1 / (d (d^2 - 1))
  kP2RowCoincide,      //  1 / (d (d + 1))
  kP2ColCoincide,      //  1 / (d (d + 1))
  kP2AllCoincide,      //  2 / (d (d + 1))
};

// Exact rational value num/den; both fit 64 bits for any d <= cap.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Haar-distributed d x d unitary: complex Ginibre matrix, QR, then each Q
// column rescaled by the phase of the matching R diagonal so the distribution
// is exactly Haar rather than merely unitary.
Matrix sample_haar_unitary(long d, RngStream& rng);

// First `cols` columns of a Haar unitary (an isometry uniform on the Stiefel
// manifold), built the same way from a rows x cols Ginibre matrix.
Matrix sample_haar_isometry(long rows, long cols, RngStream& rng);

// E[ U*_{ij} U_{kl} ] = 1/d for (k,l) = (i,j); zero otherwise.
double haar_moment_p1(long d);

// True when the first-order monomial U*_{i,j} U_{k,l} has nonzero average.
bool p1_monomial_nonzero(long i, long j, long k, long l);

// E[ U*_{i1 j1} U*_{i2 j2} U_{k1 l1} U_{k2 l2} ] for the given nonzero case.
double haar_moment_p2(MomentCase c, long d);
Rational haar_moment_p2_exact(MomentCase c, long d);

// Classifies the second-order monomial U*_{i1 j1} U*_{i2 j2} U_{k1 l1} U_{k2 l2};
// nullopt means the Haar average vanishes.
std::optional<MomentCase> classify_p2_monomial(long i1, long j1, long i2, long j2,
                                               long k1, long l1, long k2, long l2);

}  // namespace scatterlab
