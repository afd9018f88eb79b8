#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rid/matrix.hpp"

namespace rid {

struct PowerIterationOptions {
  int max_iters = 100;
  double tol = 1e-6;
};

/// Largest singular value of a linear operator by power iteration on
/// A^H A. `apply` maps a cols-vector to a rows-vector and `apply_adjoint`
/// the reverse. The estimate sequence ||A x_t|| with unit x_t is
/// nondecreasing, so the result is a lower bound that tightens with iters.
template <class Apply, class ApplyAdjoint>
double spectral_norm_estimate(std::size_t rows, std::size_t cols, Apply&& apply,
                              ApplyAdjoint&& apply_adjoint, PowerIterationOptions opts,
                              const RngState& rng) {
  detail::require(rows >= 1 && cols >= 1, "spectral_norm_estimate: empty operator");
  detail::require(opts.max_iters >= 1, "spectral_norm_estimate: max_iters must be >= 1");
  detail::require(opts.tol > 0.0, "spectral_norm_estimate: tol must be positive");

  std::vector<Complex> x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[i] = complex_normal(rng, i);
  double xn = detail::norm2(x);
  for (auto& v : x) v /= xn;

  double sigma = 0.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    std::vector<Complex> y = apply(std::span<const Complex>(x));
    const double prev = sigma;
    sigma = detail::norm2(y);
    if (sigma == 0.0) return 0.0;
    if (it > 0 && std::abs(sigma - prev) <= opts.tol * sigma) break;
    x = apply_adjoint(std::span<const Complex>(y));
    xn = detail::norm2(x);
    if (xn == 0.0) break;
    for (auto& v : x) v /= xn;
  }
  return sigma;
}

namespace detail {

inline std::vector<Complex> gemv(const DenseMatrix& a, std::span<const Complex> x) {
  std::vector<Complex> y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) axpy(x[j], a.col(j), y);
  return y;
}

inline std::vector<Complex> gemv_adjoint(const DenseMatrix& a, std::span<const Complex> y) {
  std::vector<Complex> x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) x[j] = dot(a.col(j), y);
  return x;
}

}  // namespace detail

inline double spectral_norm_estimate(const DenseMatrix& a, int max_iters, double tol,
                                     const RngState& rng) {
  return spectral_norm_estimate(
      a.rows(), a.cols(), [&](std::span<const Complex> x) { return detail::gemv(a, x); },
      [&](std::span<const Complex> y) { return detail::gemv_adjoint(a, y); },
      PowerIterationOptions{max_iters, tol}, rng);
}

}  // namespace rid
