#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "rid/errors.hpp"
#include "rid/matrix.hpp"
#include "rid/parallel.hpp"

namespace rid {

constexpr bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

/// Roots of unity e^{-2 pi i j / m}, j in [0, m), for one power-of-two length.
/// Built once and shared read-only across workers.
class TwiddleTable {
 public:
  explicit TwiddleTable(std::size_t length) : length_(length), factors_(length) {
    detail::require(is_power_of_two(length), "TwiddleTable: length must be a power of two");
    for (std::size_t j = 0; j < length; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(length);
      factors_[j] = Complex(std::cos(angle), std::sin(angle));
    }
  }

  std::size_t length() const noexcept { return length_; }
  std::span<const Complex> factors() const noexcept { return factors_; }
  const Complex& operator[](std::size_t j) const { return factors_[j]; }

 private:
  std::size_t length_;
  std::vector<Complex> factors_;
};

namespace detail {

inline void bit_reverse_permute(std::span<Complex> x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
}

// -i * z
inline Complex rot_neg_i(Complex z) { return {z.imag(), -z.real()}; }

}  // namespace detail

/// In-place unnormalized forward DFT, X_j = sum_k x_k e^{-2 pi i jk/m}.
///
/// Iterative decimation in time: bit-reverse the input, run one radix-2
/// stage if log2(m) is odd, then radix-4 stages. After bit reversal the four
/// quarter-blocks of a length-L group hold the sub-DFTs of x[4n+r] in the
/// order r = 0, 2, 1, 3.
inline void fft_column(std::span<Complex> x, const TwiddleTable& tw) {
  const std::size_t m = x.size();
  detail::require(is_power_of_two(m), "fft_column: length must be a power of two");
  detail::require(tw.length() == m, "fft_column: twiddle table length mismatch");
  if (m == 1) return;

  detail::bit_reverse_permute(x);

  std::size_t log2m = 0;
  while ((std::size_t{1} << log2m) < m) ++log2m;

  std::size_t len = 1;
  if (log2m % 2 == 1) {
    for (std::size_t b = 0; b < m; b += 2) {
      const Complex u = x[b];
      const Complex v = x[b + 1];
      x[b] = u + v;
      x[b + 1] = u - v;
    }
    len = 2;
  }

  for (len *= 4; len <= m; len *= 4) {
    const std::size_t quarter = len / 4;
    const std::size_t stride = m / len;
    for (std::size_t b = 0; b < m; b += len) {
      for (std::size_t j = 0; j < quarter; ++j) {
        const Complex w1 = tw[j * stride];
        const Complex w2 = tw[2 * j * stride];
        const Complex w3 = tw[3 * j * stride];
        const Complex a0 = x[b + j];
        const Complex a2 = detail::mul(w2, x[b + quarter + j]);
        const Complex a1 = detail::mul(w1, x[b + 2 * quarter + j]);
        const Complex a3 = detail::mul(w3, x[b + 3 * quarter + j]);
        const Complex s02 = a0 + a2;
        const Complex d02 = a0 - a2;
        const Complex s13 = a1 + a3;
        const Complex d13 = detail::rot_neg_i(a1 - a3);
        x[b + j] = s02 + s13;
        x[b + quarter + j] = d02 + d13;
        x[b + 2 * quarter + j] = s02 - s13;
        x[b + 3 * quarter + j] = d02 - d13;
      }
    }
  }
}

/// Transforms every column of `a` independently. Columns are distributed
/// across workers; each column is transformed sequentially.
inline void fft_columns(DenseMatrix& a, Workers workers = {}) {
  detail::require(is_power_of_two(a.rows()), "fft_columns: row count must be a power of two");
  const TwiddleTable tw(a.rows());
  parallel_for(a.cols(), workers, [&](std::size_t j) { fft_column(a.col(j), tw); });
}

/// Direct O(m^2) evaluation of the DFT matrix product; any length m >= 1.
inline std::vector<Complex> dft_oracle(std::span<const Complex> x) {
  const std::size_t m = x.size();
  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t e = (j * k) % m;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) /
                           static_cast<double>(m);
      acc += Complex(std::cos(angle), std::sin(angle)) * x[k];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace rid
