// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/rng.hpp"

#include <cmath>
#include <numbers>

namespace oia {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

inline Philox4x64::Block round_once(const Philox4x64::Block& c, const Philox4x64::Key& k) {
  std::uint64_t hi0, hi1;
  const std::uint64_t lo0 = mul_hi_lo(kMult0, c[0], hi0);
  const std::uint64_t lo1 = mul_hi_lo(kMult1, c[2], hi1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x64::Block Philox4x64::block(const Block& counter, const Key& key) {
  Block c = round_once(counter, key);
  Key k = key;
  for (int r = 1; r < 10; ++r) {
    k[0] += kWeyl0;
    k[1] += kWeyl1;
    c = round_once(c, k);
  }
  return c;
}

std::uint64_t RandomStream::next_u64() {
  if (buffer_pos_ == 4) {
    buffer_ = Philox4x64::block(counter_, key_);
    buffer_pos_ = 0;
    for (int i = 0; i < 4; ++i) {
      if (++counter_[i] != 0) break;  // little-endian carry
    }
  }
  return buffer_[buffer_pos_++];
}

double RandomStream::next_unit_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_unit_halfopen() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::array<double, 2> RandomStream::next_gaussian_pair() {
  const double u1 = next_unit_open();
  const double u2 = next_unit_halfopen();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::complex<double> RandomStream::next_complex_gaussian(double variance) {
  const auto g = next_gaussian_pair();
  const double s = std::sqrt(variance / 2.0);
  return {s * g[0], s * g[1]};
}

}  // namespace oia
