#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rid/errors.hpp"
#include "rid/parallel.hpp"
#include "rid/random.hpp"

namespace rid {

using Complex = std::complex<double>;

namespace detail {

// Plain complex arithmetic. std::complex operator* takes the Annex G slow path
// (__muldc3) on NaN checks, which blocks vectorization in hot loops.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

/// conj(a) * b
inline Complex conj_mul(Complex a, Complex b) {
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.real() * b.imag() - a.imag() * b.real()};
}

inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// y += alpha * x; each entry adds the full product term alpha * x_i.
inline void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const std::size_t n = x.size();
  const Complex* xp = x.data();
  Complex* yp = y.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xp[i].real();
    const double xi = xp[i].imag();
    const double tr = ar * xr - ai * xi;
    const double ti = ar * xi + ai * xr;
    yp[i] = Complex(yp[i].real() + tr, yp[i].imag() + ti);
  }
}

/// sum_i conj(x_i) * y_i, accumulated in ascending i.
inline Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

inline double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const Complex& z : x) s += abs2(z);
  return std::sqrt(s);
}

}  // namespace detail

/// Dense complex matrix in column-major order. Column j is the contiguous
/// range [j*rows, (j+1)*rows). Zero-sized dimensions are allowed so that
/// empty blocks (e.g. k x 0) can be represented.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    detail::require(data_.size() == rows_ * cols_, "DenseMatrix: data length != rows*cols");
  }

  /// Row-major nested initializer, convenient for small literals.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix out(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      detail::require(row.size() == c, "DenseMatrix::from_rows: ragged rows");
      std::size_t j = 0;
      for (const Complex& v : row) out(i, j++) = v;
      ++i;
    }
    return out;
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<Complex> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const Complex> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// a * b. Every output entry accumulates over the inner index in ascending
/// order, so the result is bitwise identical for any worker count.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, Workers workers = {}) {
  detail::require(a.cols() == b.rows(), "matmul: inner dimensions disagree");
  DenseMatrix c(a.rows(), b.cols());
  parallel_for(b.cols(), workers, [&](std::size_t j) {
    auto out = c.col(j);
    for (std::size_t p = 0; p < a.cols(); ++p) detail::axpy(b(p, j), a.col(p), out);
  });
  return c;
}

/// a^H * b
inline DenseMatrix adjoint_matmul(const DenseMatrix& a, const DenseMatrix& b,
                                  Workers workers = {}) {
  detail::require(a.rows() == b.rows(), "adjoint_matmul: row counts disagree");
  DenseMatrix c(a.cols(), b.cols());
  parallel_for(b.cols(), workers, [&](std::size_t j) {
    for (std::size_t i = 0; i < a.cols(); ++i) c(i, j) = detail::dot(a.col(i), b.col(j));
  });
  return c;
}

inline DenseMatrix adjoint(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = std::conj(a(i, j));
  return out;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "subtract: shape mismatch");
  DenseMatrix out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
  return out;
}

inline double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data()) s += detail::abs2(z);
  return std::sqrt(s);
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Sample index for entry (i, j); depends only on the coordinates so that
/// sub-blocks and any fill order see the same values.
constexpr std::uint64_t entry_index(std::size_t i, std::size_t j) {
  return (static_cast<std::uint64_t>(j) << 32) | static_cast<std::uint64_t>(i);
}

/// I.i.d. complex Gaussian entries with E|z|^2 = 1.
inline DenseMatrix gaussian_complex_matrix(std::size_t rows, std::size_t cols,
                                           const RngState& rng, Workers workers = {}) {
  detail::require(rows >= 1 && cols >= 1, "gaussian_complex_matrix: empty shape");
  detail::require(rows <= 0xFFFFFFFFull, "gaussian_complex_matrix: too many rows");
  DenseMatrix out(rows, cols);
  parallel_for(cols, workers, [&](std::size_t j) {
    auto c = out.col(j);
    for (std::size_t i = 0; i < rows; ++i) c[i] = complex_normal(rng, entry_index(i, j));
  });
  return out;
}

}  // namespace rid
