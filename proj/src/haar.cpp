// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/haar.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace scatterlab {

namespace {

Matrix ginibre(long rows, long cols, RngStream& rng) {
  Matrix g(rows, cols);
  // Column-major fill so the draw order matches Eigen's storage order.
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) g(i, j) = rng.gaussian_complex();
  return g;
}

// Q from the QR decomposition of a Ginibre matrix is Haar only after fixing
// the residual diagonal phase freedom: rescale column j by R_jj/|R_jj|.
Matrix haar_from_ginibre(Matrix g, long cols) {
  Eigen::HouseholderQR<Matrix> qr(std::move(g));
  Matrix q = qr.householderQ() * Matrix::Identity(qr.rows(), cols);
  for (long j = 0; j < cols; ++j) {
    const Complex r_jj = qr.matrixQR()(j, j);
    const double mag = std::abs(r_jj);
    q.col(j) *= (mag > 0.0) ? r_jj / mag : Complex(1.0, 0.0);
  }
  return q;
}

void check_moment_dim(MomentCase c, long d) {
  if (d < 1 || d > (1L << 20)) throw std::invalid_argument("haar_moment_p2: d out of range");
  if (d < 2 && c != MomentCase::kP2AllCoincide)
    throw std::invalid_argument("haar_moment_p2: pattern needs distinct indices, d >= 2");
}

}  // namespace

Matrix sample_haar_unitary(long d, RngStream& rng) {
  if (d < 1 || d > kMaxMatrixDim)
    throw std::invalid_argument("sample_haar_unitary: d out of range");
  return haar_from_ginibre(ginibre(d, d, rng), d);
}

Matrix sample_haar_isometry(long rows, long cols, RngStream& rng) {
  if (cols < 1 || rows < cols || rows > kMaxMatrixDim)
    throw std::invalid_argument("sample_haar_isometry: need 1 <= cols <= rows <= cap");
  return haar_from_ginibre(ginibre(rows, cols, rng), cols);
}

double haar_moment_p1(long d) {
  if (d < 1) throw std::invalid_argument("haar_moment_p1: d must be >= 1");
  return 1.0 / static_cast<double>(d);
}

bool p1_monomial_nonzero(long i, long j, long k, long l) {
  if (i < 0 || j < 0 || k < 0 || l < 0)
    throw std::invalid_argument("p1_monomial_nonzero: negative index");
  return k == i && l == j;
}

Rational haar_moment_p2_exact(MomentCase c, long d) {
  check_moment_dim(c, d);
  switch (c) {
    case MomentCase::kP2DistinctDirect:
      return {1, d * d - 1};
    case MomentCase::kP2DistinctSwapped:
      return {-1, d * (d * d - 1)};
    case MomentCase::kP2RowCoincide:
    case MomentCase::kP2ColCoincide:
      return {1, d * (d + 1)};
    case MomentCase::kP2AllCoincide:
      return {2, d * (d + 1)};
  }
  throw std::logic_error("haar_moment_p2_exact: unreachable");
}

double haar_moment_p2(MomentCase c, long d) { return haar_moment_p2_exact(c, d).value(); }

std::optional<MomentCase> classify_p2_monomial(long i1, long j1, long i2, long j2,
                                               long k1, long l1, long k2, long l2) {
  if (i1 < 0 || j1 < 0 || i2 < 0 || j2 < 0 || k1 < 0 || l1 < 0 || k2 < 0 || l2 < 0)
    throw std::invalid_argument("classify_p2_monomial: negative index");
  // Nonzero requires the unconjugated row/column index multisets to match the
  // conjugated ones.
  const bool rows_match = (k1 == i1 && k2 == i2) || (k1 == i2 && k2 == i1);
  const bool cols_match = (l1 == j1 && l2 == j2) || (l1 == j2 && l2 == j1);
  if (!rows_match || !cols_match) return std::nullopt;
  if (i1 == i2 && j1 == j2) return MomentCase::kP2AllCoincide;
  if (i1 == i2) return MomentCase::kP2RowCoincide;
  if (j1 == j2) return MomentCase::kP2ColCoincide;
  // Rows and columns both distinct: the matching permutations are unique and
  // the Weingarten value depends on their relative parity.
  const bool row_swapped = (k1 == i2);
  const bool col_swapped = (l1 == j2);
  return (row_swapped == col_swapped) ? MomentCase::kP2DistinctDirect
                                      : MomentCase::kP2DistinctSwapped;
}

}  // namespace scatterlab
