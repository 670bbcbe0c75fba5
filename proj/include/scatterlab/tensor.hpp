// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "scatterlab/tripartite.hpp"

namespace scatterlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances shared across the project.
inline constexpr double kNormTol = 1e-10;   // state norm / matrix trace
inline constexpr double kHermTol = 1e-10;   // max |M - M^dag| entry
inline constexpr double kPsdFloor = -1e-9;  // minimum eigenvalue after MC rounding

// Normalized pure state; the constructor enforces ||psi||=1 within kNormTol.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  long dim() const { return v_.size(); }
  const Vector& amplitudes() const { return v_; }
  Complex operator[](long i) const { return v_(i); }

 private:
  Vector v_;
};

// Hermitian, unit-trace, numerically PSD matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  long dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Nonincreasing nonnegative Schmidt coefficients with sum of squares 1.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> coefficients);

  long size() const { return static_cast<long>(c_.size()); }
  const std::vector<double>& coefficients() const { return c_; }
  double operator[](long j) const { return c_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<double> c_;
};

// Kronecker products; throws when the result would exceed kMaxMatrixDim
// (matrices) or kMaxStateDim (vectors).
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// Reduced state on the kept factors (in I,B,E order).  `keep` must be a
// nonempty subset of {kInner, kBoundary, kEnv}; keeping everything returns a
// copy.  The _raw variants skip DensityMatrix validation and are the building
// blocks for hot loops.
Matrix partial_trace_raw(const Matrix& rho, const TripartiteDims& dims, SubsystemMask keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const TripartiteDims& dims,
                            SubsystemMask keep);

// Reduced state of a pure state, computed from amplitudes without forming the
// full projector; O(d_kept^2 * d_traced).
Matrix reduced_pure_raw(const Vector& psi, const TripartiteDims& dims, SubsystemMask keep);
DensityMatrix reduced_pure(const StateVector& psi, const TripartiteDims& dims,
                           SubsystemMask keep);

// Tr(rho^2), computed as the squared Hilbert-Schmidt norm.
double purity(const DensityMatrix& rho);

// 1 - purity.
double linear_entropy(const DensityMatrix& rho);

// Sum of |eigenvalue| of a Hermitian matrix; throws on non-Hermitian input.
double trace_norm(const Matrix& m);

// trace_norm(a - b) for validated density matrices of equal dimension.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Minimum discrimination error 1/2 - trace_distance/4.
double helstrom_error(const DensityMatrix& rho, const DensityMatrix& sigma);

// Singular values of the d_a x d_b coefficient matrix of psi (row index =
// first factor), sorted nonincreasing; exact zeros (< 1e-12) are dropped.
SchmidtSpectrum schmidt(const StateVector& psi, long d_a, long d_b);

// |psi><psi| as a validated DensityMatrix.
DensityMatrix projector(const StateVector& psi);

}  // namespace scatterlab
