#pragma once

// Independent reference computations used only by the test suites.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rid/matrix.hpp"
#include "rid/random.hpp"

namespace rid::oracle {

using EigenMat = Eigen::MatrixXcd;

inline EigenMat to_eigen(const DenseMatrix& a) {
  EigenMat out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
  return out;
}

inline DenseMatrix from_eigen(const EigenMat& a) {
  DenseMatrix out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
  return out;
}

/// Singular values, descending, by dense divide-and-conquer SVD.
inline std::vector<double> singular_values(const DenseMatrix& a) {
  Eigen::BDCSVD<EigenMat> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

inline Eigen::BDCSVD<EigenMat> full_svd(const DenseMatrix& a) {
  return Eigen::BDCSVD<EigenMat>(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
}

/// Textbook triple loop, inner index ascending, same per-term arithmetic as
/// the library's axpy.
inline DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) {
        const Complex x = a(i, p);
        const Complex y = b(p, j);
        const double tr = y.real() * x.real() - y.imag() * x.imag();
        const double ti = y.real() * x.imag() + y.imag() * x.real();
        re = re + tr;
        im = im + ti;
      }
      c(i, j) = Complex(re, im);
    }
  }
  return c;
}

/// Dense DFT matrix F_jk = e^{-2 pi i jk/m}.
inline DenseMatrix dft_matrix(std::size_t m) {
  DenseMatrix f(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % m) /
                           static_cast<double>(m);
      f(j, k) = Complex(std::cos(angle), std::sin(angle));
    }
  return f;
}

inline std::vector<Complex> random_vector(std::size_t n, const RngState& rng) {
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = complex_normal(rng, i);
  return v;
}

inline double max_rel_error(const std::vector<Complex>& got, const std::vector<Complex>& want) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num = std::max(num, std::abs(got[i] - want[i]));
    den = std::max(den, std::abs(want[i]));
  }
  return den == 0.0 ? num : num / den;
}

inline double orthogonality_defect(const DenseMatrix& q) {
  DenseMatrix g = adjoint_matmul(q, q);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

/// Exactly rank-r product of Gaussian factors.
inline DenseMatrix low_rank(std::size_t m, std::size_t n, std::size_t r, const RngState& rng) {
  return matmul(gaussian_complex_matrix(m, r, rng.split(11)),
                gaussian_complex_matrix(r, n, rng.split(12)));
}

}  // namespace rid::oracle
