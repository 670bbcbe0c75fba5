// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace scatterlab {

namespace {

// Flat-index offsets of every configuration of the chosen factors, earlier
// factors (I before B before E) most significant.
std::vector<long> factor_offsets(const TripartiteDims& dims, SubsystemMask chosen) {
  const long sizes[3] = {dims.d_inner, dims.d_boundary, dims.d_env};
  const long strides[3] = {dims.d_boundary * dims.d_env, dims.d_env, 1};
  std::vector<long> offsets{0};
  for (int f = 0; f < 3; ++f) {
    if (!(chosen & (1u << f))) continue;
    std::vector<long> grown;
    grown.reserve(offsets.size() * static_cast<std::size_t>(sizes[f]));
    for (long base : offsets)
      for (long v = 0; v < sizes[f]; ++v) grown.push_back(base + v * strides[f]);
    offsets.swap(grown);
  }
  return offsets;
}

void check_keep_mask(SubsystemMask keep) {
  if (keep == 0 || (keep & ~kAllSubsystems) != 0)
    throw std::invalid_argument("partial_trace: keep must be a nonempty subset of {I,B,E}");
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() < 1) throw std::invalid_argument("StateVector: empty amplitude vector");
  if (!v_.allFinite()) throw std::invalid_argument("StateVector: non-finite amplitude");
  if (std::abs(v_.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("StateVector: not normalized");
}

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols())
    throw std::invalid_argument("DensityMatrix: not square");
  if (!m_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > kNormTol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdFloor)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw std::invalid_argument("SchmidtSpectrum: empty");
  double sumsq = 0.0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (!std::isfinite(c_[j]) || c_[j] < 0.0)
      throw std::invalid_argument("SchmidtSpectrum: coefficients must be finite and >= 0");
    if (j > 0 && c_[j] > c_[j - 1] + 1e-12)
      throw std::invalid_argument("SchmidtSpectrum: coefficients must be nonincreasing");
    sumsq += c_[j] * c_[j];
  }
  if (std::abs(sumsq - 1.0) > kNormTol)
    throw std::invalid_argument("SchmidtSpectrum: squared coefficients must sum to 1");
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.rows() * b.rows() > kMaxMatrixDim || a.cols() * b.cols() > kMaxMatrixDim)
    throw std::invalid_argument("kron: result exceeds the matrix dimension cap");
  return Eigen::kroneckerProduct(a, b);
}

Vector kron(const Vector& a, const Vector& b) {
  if (a.size() * b.size() > kMaxStateDim)
    throw std::invalid_argument("kron: result exceeds the state dimension cap");
  Vector out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace_raw(const Matrix& rho, const TripartiteDims& dims, SubsystemMask keep) {
  check_keep_mask(keep);
  if (rho.rows() != dims.total() || rho.cols() != dims.total())
    throw std::invalid_argument("partial_trace: matrix does not match dims");
  const auto kept = factor_offsets(dims, keep);
  const auto traced = factor_offsets(dims, kAllSubsystems & ~keep);
  const long dk = static_cast<long>(kept.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      Complex acc(0.0, 0.0);
      for (long t : traced) acc += rho(kept[r] + t, kept[c] + t);
      out(r, c) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const TripartiteDims& dims,
                            SubsystemMask keep) {
  return DensityMatrix(partial_trace_raw(rho.matrix(), dims, keep));
}

Matrix reduced_pure_raw(const Vector& psi, const TripartiteDims& dims, SubsystemMask keep) {
  check_keep_mask(keep);
  if (psi.size() != dims.total())
    throw std::invalid_argument("reduced_pure: state does not match dims");
  const auto kept = factor_offsets(dims, keep);
  const auto traced = factor_offsets(dims, kAllSubsystems & ~keep);
  const long dk = static_cast<long>(kept.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c <= r; ++c) {
      Complex acc(0.0, 0.0);
      for (long t : traced) acc += psi(kept[r] + t) * std::conj(psi(kept[c] + t));
      out(r, c) = acc;
      out(c, r) = std::conj(acc);
    }
  return out;
}

DensityMatrix reduced_pure(const StateVector& psi, const TripartiteDims& dims,
                           SubsystemMask keep) {
  return DensityMatrix(reduced_pure_raw(psi.amplitudes(), dims, keep));
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

double trace_norm(const Matrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw std::invalid_argument("trace_norm: matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("trace_norm: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return trace_norm(a.matrix() - b.matrix());
}

double helstrom_error(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 0.5 - 0.25 * trace_distance(rho, sigma);
}

SchmidtSpectrum schmidt(const StateVector& psi, long d_a, long d_b) {
  if (d_a < 1 || d_b < 1 || d_a * d_b != psi.dim())
    throw std::invalid_argument("schmidt: d_a*d_b must equal the state dimension");
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> coeff(psi.amplitudes().data(), d_a, d_b);
  Eigen::JacobiSVD<Matrix> svd(coeff);
  std::vector<double> c;
  for (long j = 0; j < svd.singularValues().size(); ++j) {
    const double s = svd.singularValues()(j);
    if (s >= 1e-12) c.push_back(s);
  }
  return SchmidtSpectrum(std::move(c));
}

DensityMatrix projector(const StateVector& psi) {
  if (psi.dim() > kMaxMatrixDim)
    throw std::invalid_argument("projector: state too large to materialize");
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

}  // namespace scatterlab
