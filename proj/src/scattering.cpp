// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/scattering.hpp"

#include <Eigen/QR>
#include <stdexcept>

#include "scatterlab/detail/parallel.hpp"

namespace scatterlab {

namespace {

void check_unitary(const Matrix& u, long d, const char* who) {
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument(std::string(who) + ": unitary must be d_B*d_E square");
  const Matrix gram = u.adjoint() * u;
  if ((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
}

// IB state from a bundle of BE-space columns: column i of phi is the
// (unnormalized) BE amplitude vector paired with inner label i, and
// out[(i,b),(i',b')] = sum_e phi((b,e),i) conj(phi((b',e),i')).
Matrix ib_from_slices(const Matrix& phi, const TripartiteDims& dims) {
  const long d_i = dims.d_inner, d_b = dims.d_boundary, d_e = dims.d_env;
  Matrix out(d_i * d_b, d_i * d_b);
  for (long r = 0; r < d_i * d_b; ++r) {
    const long i = r / d_b, b = r % d_b;
    const auto x = phi.col(i).segment(b * d_e, d_e);
    for (long c = 0; c <= r; ++c) {
      const long ip = c / d_b, bp = c % d_b;
      // dot() conjugates its first argument, matching the conj on phi'.
      const Complex acc = phi.col(ip).segment(bp * d_e, d_e).dot(x);
      out(r, c) = acc;
      out(c, r) = std::conj(acc);
    }
  }
  return out;
}

Matrix slice_matrix(const StateVector& psi, const TripartiteDims& dims) {
  if (psi.dim() != dims.total())
    throw std::invalid_argument("scattering: state does not match dims");
  const long dbe = dims.boundary_env();
  Matrix slices(dbe, dims.d_inner);
  for (long i = 0; i < dims.d_inner; ++i)
    slices.col(i) = psi.amplitudes().segment(i * dbe, dbe);
  return slices;
}

Matrix unconditional_raw(const Matrix& rho_inner, long d_boundary) {
  const Matrix eye_b =
      Matrix::Identity(d_boundary, d_boundary) / static_cast<double>(d_boundary);
  return kron(rho_inner, eye_b);
}

struct Deviation {
  double max_abs = 0.0;
  double trace_dist = 0.0;
};

Deviation deviation_from(const Matrix& mean, const Matrix& target) {
  return {(mean - target).cwiseAbs().maxCoeff(), trace_norm(mean - target)};
}

// Shared accumulation of mean conditional states over per-sample streams.
McAverageResult average_result(const Matrix& uncond, long n, const TripartiteDims& dims,
                               const RngStream& rng, int threads,
                               const std::function<Matrix(RngStream&)>& draw) {
  if (n < 1) throw std::invalid_argument("mc_average_state: need n >= 1");
  const long d_ib = dims.inner_boundary();
  const auto chunks = detail::make_chunks(0, n);
  std::vector<Matrix> parts(chunks.size());
  detail::for_each_chunk(0, n, threads, [&](const detail::SampleChunk& c) {
    Matrix sum = Matrix::Zero(d_ib, d_ib);
    for (long s = c.begin; s < c.end; ++s) {
      RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
      sum += draw(stream);
    }
    parts[c.index] = std::move(sum);
  });
  Matrix total = Matrix::Zero(d_ib, d_ib);
  for (const auto& p : parts) total += p;
  total /= static_cast<double>(n);
  const Deviation dev = deviation_from(total, uncond);
  return {DensityMatrix(std::move(total)), dev.max_abs, dev.trace_dist, n};
}

MonteCarloEstimate purity_estimate(long n, const RngStream& rng, int threads,
                                   const std::function<double(RngStream&)>& draw) {
  if (n < 2) throw std::invalid_argument("mc_mean_purity: need n >= 2");
  const auto chunks = detail::make_chunks(0, n);
  std::vector<RunningStats> parts(chunks.size());
  detail::for_each_chunk(0, n, threads, [&](const detail::SampleChunk& c) {
    RunningStats stats;
    for (long s = c.begin; s < c.end; ++s) {
      RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
      stats.add(draw(stream));
    }
    parts[c.index] = stats;
  });
  RunningStats total;
  for (const auto& p : parts) total.merge(p);
  return {total.mean(), total.standard_error(), total.count()};
}

}  // namespace

Matrix apply_scattering_raw(const Matrix& rho, const Matrix& u_be, const TripartiteDims& dims) {
  const long d = dims.total(), dbe = dims.boundary_env();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("apply_scattering: state does not match dims");
  if (u_be.rows() != dbe || u_be.cols() != dbe)
    throw std::invalid_argument("apply_scattering: unitary does not match d_B*d_E");
  const long d_i = dims.d_inner, d_b = dims.d_boundary, d_e = dims.d_env;
  Matrix out(d_i * d_b, d_i * d_b);
  for (long i = 0; i < d_i; ++i)
    for (long ip = 0; ip < d_i; ++ip) {
      // (I tensor U) rho (I tensor U)^dag acts on each d_BE block separately.
      const Matrix t = u_be * rho.block(i * dbe, ip * dbe, dbe, dbe) * u_be.adjoint();
      for (long b = 0; b < d_b; ++b)
        for (long bp = 0; bp < d_b; ++bp) {
          Complex acc(0.0, 0.0);
          for (long e = 0; e < d_e; ++e) acc += t(b * d_e + e, bp * d_e + e);
          out(i * d_b + b, ip * d_b + bp) = acc;
        }
    }
  return out;
}

DensityMatrix apply_scattering(const DensityMatrix& rho, const Matrix& u_be,
                               const TripartiteDims& dims) {
  check_unitary(u_be, dims.boundary_env(), "apply_scattering");
  return DensityMatrix(apply_scattering_raw(rho.matrix(), u_be, dims));
}

DensityMatrix scatter_pure(const StateVector& psi, const Matrix& u_be,
                           const TripartiteDims& dims) {
  check_unitary(u_be, dims.boundary_env(), "scatter_pure");
  const Matrix phi = u_be * slice_matrix(psi, dims);
  return DensityMatrix(ib_from_slices(phi, dims));
}

DensityMatrix unconditional_state(const DensityMatrix& rho, const TripartiteDims& dims) {
  const Matrix rho_i = partial_trace_raw(rho.matrix(), dims, kInner);
  return DensityMatrix(unconditional_raw(rho_i, dims.d_boundary));
}

DensityMatrix unconditional_state(const StateVector& psi, const TripartiteDims& dims) {
  const Matrix rho_i = reduced_pure_raw(psi.amplitudes(), dims, kInner);
  return DensityMatrix(unconditional_raw(rho_i, dims.d_boundary));
}

DensityMatrix conditional_separable(const DensityMatrix& rho_inner, const StateVector& phi_be,
                                    const TripartiteDims& dims) {
  if (rho_inner.dim() != dims.d_inner || phi_be.dim() != dims.boundary_env())
    throw std::invalid_argument("conditional_separable: dimension mismatch");
  const TripartiteDims be(1, dims.d_boundary, dims.d_env);
  const Matrix marginal = reduced_pure_raw(phi_be.amplitudes(), be, kBoundary);
  return DensityMatrix(kron(rho_inner.matrix(), marginal));
}

PureScatterPlan::PureScatterPlan(const StateVector& psi, const TripartiteDims& dims)
    : dims_(dims) {
  const Matrix slices = slice_matrix(psi, dims);
  Eigen::ColPivHouseholderQR<Matrix> qr;
  qr.setThreshold(1e-12);
  qr.compute(slices);
  const long r = qr.rank();
  basis_ = qr.householderQ() * Matrix::Identity(slices.rows(), r);
  coeff_ = basis_.adjoint() * slices;
  if ((basis_ * coeff_ - slices).cwiseAbs().maxCoeff() > 1e-10)
    throw std::logic_error("PureScatterPlan: span basis failed to reproduce the state");
}

Matrix PureScatterPlan::conditional_raw(const Matrix& image) const {
  if (image.rows() != dims_.boundary_env() || image.cols() != basis_.cols())
    throw std::invalid_argument("PureScatterPlan: image has wrong shape");
  return ib_from_slices(image * coeff_, dims_);
}

Matrix PureScatterPlan::sample_conditional_raw(RngStream& rng) const {
  return ib_from_slices(sample_haar_isometry(dims_.boundary_env(), rank(), rng) * coeff_,
                        dims_);
}

McAverageResult mc_average_state(const DensityMatrix& rho, const TripartiteDims& dims, long n,
                                 const RngStream& rng, int threads,
                                 const UnitaryGenerator& generator) {
  const Matrix uncond =
      unconditional_raw(partial_trace_raw(rho.matrix(), dims, kInner), dims.d_boundary);
  const long dbe = dims.boundary_env();
  auto draw = [&](RngStream& stream) {
    const Matrix u = generator ? generator(dbe, stream) : sample_haar_unitary(dbe, stream);
    return apply_scattering_raw(rho.matrix(), u, dims);
  };
  return average_result(uncond, n, dims, rng, threads, draw);
}

McAverageResult mc_average_state(const StateVector& psi, const TripartiteDims& dims, long n,
                                 const RngStream& rng, int threads) {
  const Matrix uncond =
      unconditional_raw(reduced_pure_raw(psi.amplitudes(), dims, kInner), dims.d_boundary);
  const PureScatterPlan plan(psi, dims);
  auto draw = [&](RngStream& stream) { return plan.sample_conditional_raw(stream); };
  return average_result(uncond, n, dims, rng, threads, draw);
}

MonteCarloEstimate mc_mean_purity(const DensityMatrix& rho, const TripartiteDims& dims, long n,
                                  const RngStream& rng, int threads) {
  const long dbe = dims.boundary_env();
  auto draw = [&](RngStream& stream) {
    const Matrix u = sample_haar_unitary(dbe, stream);
    return apply_scattering_raw(rho.matrix(), u, dims).squaredNorm();
  };
  return purity_estimate(n, rng, threads, draw);
}

MonteCarloEstimate mc_mean_purity(const StateVector& psi, const TripartiteDims& dims, long n,
                                  const RngStream& rng, int threads) {
  const PureScatterPlan plan(psi, dims);
  auto draw = [&](RngStream& stream) { return plan.sample_conditional_raw(stream).squaredNorm(); };
  return purity_estimate(n, rng, threads, draw);
}

std::vector<double> sample_conditional_purities(const StateVector& psi,
                                                const TripartiteDims& dims, long n,
                                                const RngStream& rng, int threads) {
  if (n < 1) throw std::invalid_argument("sample_conditional_purities: need n >= 1");
  const PureScatterPlan plan(psi, dims);
  std::vector<double> purities(static_cast<std::size_t>(n));
  detail::for_each_chunk(0, n, threads, [&](const detail::SampleChunk& c) {
    for (long s = c.begin; s < c.end; ++s) {
      RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
      purities[static_cast<std::size_t>(s)] = plan.sample_conditional_raw(stream).squaredNorm();
    }
  });
  return purities;
}

ScatterSample sample_scattering(const StateVector& psi, const TripartiteDims& dims,
                                const RngStream& rng, long sample_index) {
  const PureScatterPlan plan(psi, dims);
  RngStream stream = rng.substream(static_cast<std::uint64_t>(sample_index));
  DensityMatrix conditional(plan.sample_conditional_raw(stream));
  const double mu = purity(conditional);
  const double dist = trace_distance(conditional, unconditional_state(psi, dims));
  return {sample_index, std::move(conditional), mu, dist};
}

}  // namespace scatterlab
