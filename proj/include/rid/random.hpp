#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace rid {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each call
/// maps (key, counter) to four independent 32-bit words with no hidden state.
namespace philox {

using Words = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr Words round(Words c, Key k) {
  const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
  const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

constexpr Words generate(Words counter, Key key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

}  // namespace philox

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Identifies one reproducible random sequence. Samples are addressed by a
/// 64-bit index, so any fill order or worker count sees the same values.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Independent child stream for a named purpose.
  constexpr RngState split(std::uint64_t tag) const {
    return RngState{seed, splitmix64(stream ^ splitmix64(tag + 0x632BE59BD9B4E019ull))};
  }

  constexpr philox::Words words(std::uint64_t index) const {
    const philox::Words ctr{static_cast<std::uint32_t>(index),
                            static_cast<std::uint32_t>(index >> 32),
                            static_cast<std::uint32_t>(stream),
                            static_cast<std::uint32_t>(stream >> 32)};
    const philox::Key key{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
    return philox::generate(ctr, key);
  }

  friend constexpr bool operator==(const RngState&, const RngState&) = default;
};

namespace detail {

constexpr double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace detail

/// Two independent uniforms on [0, 1) for sample `index`.
inline std::array<double, 2> uniform_pair(const RngState& rng, std::uint64_t index) {
  const auto w = rng.words(index);
  return {detail::to_unit(w[0], w[1]), detail::to_unit(w[2], w[3])};
}

inline double uniform01(const RngState& rng, std::uint64_t index) {
  return uniform_pair(rng, index)[0];
}

/// Uniform integer on [0, bound), bound >= 1. Multiply-shift; bias is below
/// 2^-32 for any bound that fits in 32 bits.
inline std::uint64_t uniform_index(const RngState& rng, std::uint64_t index,
                                   std::uint64_t bound) {
  const auto w = rng.words(index);
  const std::uint64_t x = (std::uint64_t{w[0]} << 32) | w[1];
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * bound) >> 64);
}

/// Circularly-symmetric complex normal with E|z|^2 = 1 (Box-Muller).
inline std::complex<double> complex_normal(const RngState& rng, std::uint64_t index) {
  const auto [u1, u2] = uniform_pair(rng, index);
  const double radius = std::sqrt(-std::log1p(-u1));  // sqrt(-2 ln(1-u1)) / sqrt(2)
  const double theta = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

}  // namespace rid
