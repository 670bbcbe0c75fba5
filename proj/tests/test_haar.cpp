// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <cmath>

#include "scatterlab/haar.hpp"
#include "scatterlab/scattering.hpp"

using namespace scatterlab;

TEST_SUITE("haar") {

TEST_CASE("sampled unitaries are unitary and deterministic per stream") {
  for (long d : {1L, 2L, 5L, 16L}) {
    RngStream rng(101, 7);
    const Matrix u = sample_haar_unitary(d, rng);
    REQUIRE(u.rows() == d);
    CHECK((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
    RngStream again(101, 7);
    CHECK((sample_haar_unitary(d, again) - u).cwiseAbs().maxCoeff() == 0.0);
  }
  RngStream rng(101, 8);  // different stream id, different draw
  RngStream base(101, 7);
  CHECK((sample_haar_unitary(4, rng) - sample_haar_unitary(4, base)).cwiseAbs().maxCoeff() >
        1e-3);
  CHECK_THROWS_AS(sample_haar_unitary(0, rng), std::invalid_argument);
}

TEST_CASE("d=1 sampling reduces to the phase of one Ginibre draw") {
  RngStream rng(2024, 3);
  const Complex g = rng.gaussian_complex();
  RngStream replay(2024, 3);
  const Matrix u = sample_haar_unitary(1, replay);
  CHECK(std::abs(u(0, 0) - g / std::abs(g)) < 1e-15);
  CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("sampled isometries satisfy V^dag V = I") {
  RngStream rng(303);
  const Matrix v = sample_haar_isometry(6, 2, rng);
  REQUIRE(v.rows() == 6);
  REQUIRE(v.cols() == 2);
  CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(sample_haar_isometry(2, 3, rng), std::invalid_argument);
}

TEST_CASE("first-order moment and its support") {
  CHECK(haar_moment_p1(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(haar_moment_p1(7) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK_THROWS_AS(haar_moment_p1(0), std::invalid_argument);
  CHECK(p1_monomial_nonzero(0, 0, 0, 0));
  CHECK(p1_monomial_nonzero(1, 2, 1, 2));
  CHECK_FALSE(p1_monomial_nonzero(0, 0, 0, 1));
  CHECK_FALSE(p1_monomial_nonzero(0, 0, 1, 0));
  CHECK_THROWS_AS(p1_monomial_nonzero(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("second-order moments match the exact rationals") {
  auto eq = [](const Rational& r, std::int64_t n, std::int64_t d) {
    return r.num == n && r.den == d;
  };
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2DistinctDirect, 2), 1, 3));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2DistinctSwapped, 2), -1, 6));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2RowCoincide, 2), 1, 6));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2ColCoincide, 2), 1, 6));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2AllCoincide, 2), 2, 6));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2DistinctDirect, 3), 1, 8));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2DistinctSwapped, 3), -1, 24));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2RowCoincide, 3), 1, 12));
  CHECK(eq(haar_moment_p2_exact(MomentCase::kP2AllCoincide, 8), 2, 72));
  CHECK(haar_moment_p2(MomentCase::kP2DistinctSwapped, 8) ==
        doctest::Approx(-1.0 / 504.0).epsilon(1e-15));
  // E|u|^4 = 1 on U(1); patterns with distinct rows need d >= 2.
  CHECK(haar_moment_p2(MomentCase::kP2AllCoincide, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(haar_moment_p2(MomentCase::kP2DistinctDirect, 1), std::invalid_argument);
}

TEST_CASE("monomial classification covers all five cases and the zeros") {
  using MC = MomentCase;
  CHECK(classify_p2_monomial(0, 0, 1, 1, 0, 0, 1, 1) == MC::kP2DistinctDirect);
  CHECK(classify_p2_monomial(0, 0, 1, 1, 0, 1, 1, 0) == MC::kP2DistinctSwapped);
  CHECK(classify_p2_monomial(0, 0, 0, 1, 0, 0, 0, 1) == MC::kP2RowCoincide);
  CHECK(classify_p2_monomial(0, 0, 1, 0, 0, 0, 1, 0) == MC::kP2ColCoincide);
  CHECK(classify_p2_monomial(0, 0, 0, 0, 0, 0, 0, 0) == MC::kP2AllCoincide);
  // Rows and columns both swapped is an even relative permutation: direct.
  CHECK(classify_p2_monomial(0, 0, 1, 1, 1, 1, 0, 0) == MC::kP2DistinctDirect);
  // Swapping only the row pairing flips the parity.
  CHECK(classify_p2_monomial(0, 0, 1, 1, 1, 0, 0, 1) == MC::kP2DistinctSwapped);
  // Row-coincide written with swapped columns is still row-coincide.
  CHECK(classify_p2_monomial(0, 0, 0, 1, 0, 1, 0, 0) == MC::kP2RowCoincide);
  CHECK_FALSE(classify_p2_monomial(0, 0, 1, 1, 0, 0, 0, 1).has_value());  // row mismatch
  CHECK_FALSE(classify_p2_monomial(0, 0, 1, 1, 0, 0, 1, 0).has_value());  // col mismatch
  CHECK_FALSE(classify_p2_monomial(0, 0, 1, 1, 0, 0, 1, 2).has_value());
  CHECK_FALSE(classify_p2_monomial(0, 0, 1, 1, 2, 0, 1, 1).has_value());
  CHECK_THROWS_AS(classify_p2_monomial(0, 0, 0, 0, 0, 0, 0, -1), std::invalid_argument);
}

TEST_CASE("Monte Carlo moments agree with the analytic values at d=2") {
  const long n = 20000;
  RngStream root(515151);
  RunningStats abs00, cross_re, cross_im, mean_re, mean_im;
  for (long s = 0; s < n; ++s) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(s));
    const Matrix u = sample_haar_unitary(2, stream);
    abs00.add(std::norm(u(0, 0)));
    const Complex cross = std::conj(u(0, 0)) * std::conj(u(1, 1)) * u(0, 1) * u(1, 0);
    cross_re.add(cross.real());
    cross_im.add(cross.imag());
    mean_re.add(u(0, 0).real());
    mean_im.add(u(0, 0).imag());
  }
  // E|U00|^2 = 1/2.
  CHECK(std::abs(abs00.mean() - 0.5) < 4.0 * abs00.standard_error());
  // E[U*00 U*11 U01 U10] = -1/6 (swapped case).
  CHECK(std::abs(cross_re.mean() + 1.0 / 6.0) < 4.0 * cross_re.standard_error());
  CHECK(std::abs(cross_im.mean()) < 4.0 * cross_im.standard_error());
  // E[U00] = 0: phases average out only if the QR phase fix is applied.
  CHECK(std::abs(mean_re.mean()) < 4.0 * mean_re.standard_error());
  CHECK(std::abs(mean_im.mean()) < 4.0 * mean_im.standard_error());
}

TEST_CASE("isometry sampling matches the leading columns' statistics") {
  // E|V_{00}|^2 = 1/rows for a Stiefel-uniform isometry.
  const long n = 20000;
  RngStream root(626262);
  RunningStats s;
  for (long k = 0; k < n; ++k) {
    RngStream stream = root.substream(static_cast<std::uint64_t>(k));
    const Matrix v = sample_haar_isometry(5, 2, stream);
    s.add(std::norm(v(0, 0)));
  }
  CHECK(std::abs(s.mean() - 0.2) < 4.0 * s.standard_error());
}

}  // TEST_SUITE
