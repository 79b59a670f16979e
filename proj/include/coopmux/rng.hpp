// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace coopmux {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// The key is the master seed and the high half of the counter is the stream
/// index, so stream `t` of a given seed is a fixed sequence no matter which
/// thread draws it or in which order streams are visited. Monte Carlo trial
/// `t` always uses stream index `t`.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return index_; }

  std::uint32_t next_u32();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double next_uniform();

  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1.
  std::complex<double> next_complex_gaussian();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned pos_ = 4;
};

}  // namespace coopmux
