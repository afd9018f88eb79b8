#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "rid/errors.hpp"
#include "rid/matrix.hpp"
#include "rid/parallel.hpp"

namespace rid {

/// Rank-k column-pivoted QR of an l x n matrix Y.
///
/// `r` holds the coefficients of every column of Y against q, in Y's column
/// order. Restricted to `pivots` (in pivot order) it is upper triangular with
/// a real positive, non-increasing diagonal.
struct PivotedQr {
  DenseMatrix q;                     // l x k, orthonormal columns
  DenseMatrix r;                     // k x n
  std::vector<std::size_t> pivots;   // k distinct column indices
  std::vector<double> resid_norms;   // residual norm of each pivot when chosen
};

struct GramSchmidtOptions {
  Workers workers{};
  /// Re-project the pivot when its residual fell below this fraction of its
  /// original norm.
  double reorth_threshold = 1.0 / std::numbers::sqrt2;
  /// Relative (to the largest initial column norm) residual below which a
  /// pivot counts as numerically zero.
  double rank_tol = 1e-13;
};

/// Wall time split between orthogonalizing the pivots and updating the
/// remaining columns (the latter is the column-parallel bulk of the work).
struct GramSchmidtTimings {
  double gram_schmidt = 0.0;
  double factor_r = 0.0;
};

/// Greedy max-residual-norm pivoting with classical Gram-Schmidt and one
/// conditional reorthogonalization pass ("twice is enough").
///
/// Each step picks the remaining column of largest residual norm (lowest
/// index on ties), re-projects it against all committed q columns if
/// cancellation was heavy, normalizes it into the next q column, and then
/// projects that q out of every remaining column, recording the coefficients
/// into r. Throws RankDeficientSketch when a pivot residual is numerically
/// zero before k columns are found.
inline PivotedQr pivoted_gs_qr(const DenseMatrix& y, std::size_t k,
                               const GramSchmidtOptions& opts = {},
                               GramSchmidtTimings* timings = nullptr) {
  const std::size_t l = y.rows();
  const std::size_t n = y.cols();
  detail::require(k >= 1 && k <= l && k <= n, "pivoted_gs_qr: need 1 <= k <= min(l, n)");

  using clock = std::chrono::steady_clock;
  auto elapsed = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  double t_gs = 0.0;
  double t_update = 0.0;

  auto t0 = clock::now();
  DenseMatrix work = y;
  std::vector<double> orig_norms(n);
  std::vector<double> norms(n);
  parallel_for(n, opts.workers, [&](std::size_t j) { orig_norms[j] = detail::norm2(y.col(j)); });
  norms = orig_norms;
  double max_norm = 0.0;
  for (double v : orig_norms) max_norm = std::max(max_norm, v);
  const double zero_tol = opts.rank_tol * max_norm;

  PivotedQr out{DenseMatrix(l, k), DenseMatrix(k, n), {}, {}};
  out.pivots.reserve(k);
  out.resid_norms.reserve(k);
  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  t_update += elapsed(t0);

  for (std::size_t s = 0; s < k; ++s) {
    t0 = clock::now();
    std::size_t piv = n;
    double best = -1.0;
    for (std::size_t j : remaining) {
      if (norms[j] > best) {
        best = norms[j];
        piv = j;
      }
    }
    if (!(best > zero_tol)) throw RankDeficientSketch(s);
    out.resid_norms.push_back(best);

    auto c = work.col(piv);
    double nu = best;
    if (s > 0 && nu < opts.reorth_threshold * orig_norms[piv]) {
      std::vector<Complex> h(s);
      for (std::size_t i = 0; i < s; ++i) h[i] = detail::dot(out.q.col(i), c);
      for (std::size_t i = 0; i < s; ++i) {
        detail::axpy(-h[i], out.q.col(i), c);
        out.r(i, piv) += h[i];
      }
      nu = detail::norm2(c);
      if (!(nu > zero_tol)) throw RankDeficientSketch(s);
    }

    auto qs = out.q.col(s);
    for (std::size_t i = 0; i < l; ++i) qs[i] = c[i] / nu;
    out.r(s, piv) = nu;
    out.pivots.push_back(piv);
    std::erase(remaining, piv);
    t_gs += elapsed(t0);

    if (s + 1 == k) break;
    t0 = clock::now();
    const std::span<const Complex> qv = qs;
    parallel_for(remaining.size(), opts.workers, [&](std::size_t t) {
      const std::size_t j = remaining[t];
      auto w = work.col(j);
      const Complex coef = detail::dot(qv, w);
      detail::axpy(-coef, qv, w);
      out.r(s, j) = coef;
      norms[j] = detail::norm2(w);
    });
    t_update += elapsed(t0);
  }

  // Coefficients of the non-pivot columns against the last q.
  t0 = clock::now();
  {
    const std::span<const Complex> qv = out.q.col(k - 1);
    parallel_for(remaining.size(), opts.workers, [&](std::size_t t) {
      const std::size_t j = remaining[t];
      out.r(k - 1, j) = detail::dot(qv, work.col(j));
    });
  }
  t_update += elapsed(t0);

  if (timings != nullptr) {
    timings->gram_schmidt += t_gs;
    timings->factor_r += t_update;
  }
  return out;
}

/// R split into its pivot block and the rest: r1 = r[:, pivots] (upper
/// triangular), r2 = remaining columns in ascending original order.
struct TriangularBlocks {
  DenseMatrix r1;                          // k x k
  DenseMatrix r2;                          // k x (n - k)
  std::vector<std::size_t> nonpivot_cols;  // n - k original indices
};

inline TriangularBlocks triangular_blocks(const PivotedQr& f) {
  const std::size_t k = f.r.rows();
  const std::size_t n = f.r.cols();
  TriangularBlocks out{DenseMatrix(k, k), DenseMatrix(k, n - k), {}};
  std::vector<char> is_pivot(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    is_pivot[f.pivots[i]] = 1;
    std::ranges::copy(f.r.col(f.pivots[i]), out.r1.col(i).begin());
  }
  out.nonpivot_cols.reserve(n - k);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::ranges::copy(f.r.col(j), out.r2.col(out.nonpivot_cols.size()).begin());
    out.nonpivot_cols.push_back(j);
  }
  return out;
}

}  // namespace rid
