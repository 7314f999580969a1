// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_RNG_HPP
#define OIA_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace oia {

/// Philox 4x64 counter-based generator, 10 rounds.  A block function maps
/// (counter, key) to four statistically independent 64-bit words, so any
/// number of non-overlapping substreams can be derived from one seed by
/// varying the key, independent of scheduling order.
class Philox4x64 {
 public:
  using Block = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Block block(const Block& counter, const Key& key);
};

/// Sequential view over one keyed Philox substream.  The key is
/// (seed, stream id); the counter advances one block per four draws.
/// Streams with distinct (seed, stream) pairs never overlap.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{seed, stream}, counter_{0, 0, 0, 0}, buffer_pos_(4) {}

  std::uint64_t next_u64();

  /// Uniform double in (0, 1]; 53 significant bits.
  double next_unit_open();

  /// Uniform double in [0, 1).
  double next_unit_halfopen();

  /// Standard normal pair via Box-Muller; always consumes two uniforms.
  std::array<double, 2> next_gaussian_pair();

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> next_complex_gaussian(double variance);

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream() const { return key_[1]; }

 private:
  Philox4x64::Key key_;
  Philox4x64::Block counter_;
  Philox4x64::Block buffer_{};
  int buffer_pos_;
};

}  // namespace oia

#endif  // OIA_RNG_HPP
