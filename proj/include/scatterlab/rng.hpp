// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <cmath>

namespace scatterlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One-shot stateless mix of splitmix64.
inline std::uint64_t mix64(std::uint64_t x) { return splitmix64(x); }

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Splittable pseudo-random stream. The (seed, stream_id) pair is hashed into
// the xoshiro256++ state, so distinct stream ids give statistically
// independent sequences and a fixed pair replays bit-exactly on one platform.
// Substream derivation chains the hash, which makes it order dependent:
// substream(a).substream(b) differs from substream(b).substream(a).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed ^ detail::mix64(stream_id ^ 0x5851f42d4c957f2dULL);
    for (auto& word : state_) word = detail::splitmix64(x);
    // splitmix64 of a counter never yields four zero words, so the
    // forbidden all-zero xoshiro state is unreachable.
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream keyed by `id`; used for one-stream-per-sample fan-out.
  RngStream substream(std::uint64_t id) const {
    return RngStream(detail::mix64(seed_ ^ detail::mix64(stream_id_)), id);
  }

  // xoshiro256++ step.
  std::uint64_t next_u64() {
    const std::uint64_t out = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return out;
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; u1 is shifted into (0,1] so log stays finite.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Complex with i.i.d. standard normal real/imaginary parts.
  std::complex<double> gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace scatterlab
