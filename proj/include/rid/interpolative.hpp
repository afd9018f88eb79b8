#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rid/errors.hpp"
#include "rid/fft.hpp"
#include "rid/matrix.hpp"
#include "rid/parallel.hpp"
#include "rid/pivoted_qr.hpp"
#include "rid/random.hpp"
#include "rid/spectral_norm.hpp"
#include "rid/srft.hpp"

namespace rid {

/// Solves r1 * t = r2 for t by back substitution, one column of r2 at a time.
/// Throws SingularTriangular if a diagonal entry is below
/// `rel_tol * max|diag(r1)|`.
inline DenseMatrix solve_upper_triangular(const DenseMatrix& r1, const DenseMatrix& r2,
                                          Workers workers = {}, double rel_tol = 1e-13) {
  const std::size_t k = r1.rows();
  detail::require(r1.cols() == k, "solve_upper_triangular: r1 must be square");
  detail::require(r2.rows() == k, "solve_upper_triangular: r2 row count must match r1");

  double max_diag = 0.0;
  for (std::size_t i = 0; i < k; ++i) max_diag = std::max(max_diag, std::abs(r1(i, i)));
  for (std::size_t i = 0; i < k; ++i)
    if (!(std::abs(r1(i, i)) >= rel_tol * max_diag) || r1(i, i) == 0.0)
      throw SingularTriangular(i);

  DenseMatrix t = r2;
  parallel_for(t.cols(), workers, [&](std::size_t j) {
    auto x = t.col(j);
    for (std::size_t ii = k; ii-- > 0;) {
      x[ii] /= r1(ii, ii);
      const Complex xi = x[ii];
      for (std::size_t i = 0; i < ii; ++i) x[i] -= detail::mul(r1(i, ii), xi);
    }
  });
  return t;
}

/// P with P[:, pivots[i]] = e_i and P[:, nonpivot_cols[j]] = t[:, j], i.e.
/// [I T] mapped back to the original column order.
inline DenseMatrix assemble_interpolation(const DenseMatrix& t, std::span<const std::size_t> pivots,
                                          std::span<const std::size_t> nonpivot_cols,
                                          std::size_t n, Workers workers = {}) {
  const std::size_t k = pivots.size();
  detail::require(pivots.size() + nonpivot_cols.size() == n,
                  "assemble_interpolation: index sets do not cover n columns");
  detail::require(t.rows() == k && t.cols() == nonpivot_cols.size(),
                  "assemble_interpolation: t has the wrong shape");
  std::vector<char> seen(n, 0);
  for (std::size_t j : pivots) {
    detail::require(j < n && !seen[j], "assemble_interpolation: index sets are not a partition");
    seen[j] = 1;
  }
  for (std::size_t j : nonpivot_cols) {
    detail::require(j < n && !seen[j], "assemble_interpolation: index sets are not a partition");
    seen[j] = 1;
  }

  DenseMatrix p(k, n);
  for (std::size_t i = 0; i < k; ++i) p(i, pivots[i]) = 1.0;
  parallel_for(nonpivot_cols.size(), workers, [&](std::size_t j) {
    std::ranges::copy(t.col(j), p.col(nonpivot_cols[j]).begin());
  });
  return p;
}

/// Columns of `a` at `pivots`, copied in pivot order.
inline DenseMatrix extract_basis(const DenseMatrix& a, std::span<const std::size_t> pivots) {
  std::vector<char> seen(a.cols(), 0);
  for (std::size_t j : pivots) {
    detail::require(j < a.cols(), "extract_basis: pivot out of range");
    detail::require(!seen[j], "extract_basis: duplicate pivot");
    seen[j] = 1;
  }
  DenseMatrix b(a.rows(), pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    std::ranges::copy(a.col(pivots[i]), b.col(i).begin());
  return b;
}

/// Probabilistic spectral-error bound for the randomized ID: with probability
/// at least 1 - epsilon, ||A - BP||_2 <= 50 sqrt(mn) (1/epsilon)^(1/k) sigma_{k+1}.
inline double error_bound(double m, double n, double k, double epsilon, double sigma_kplus1) {
  detail::require(m > 0 && n > 0 && k > 0, "error_bound: m, n, k must be positive");
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "error_bound: epsilon must lie in (0, 1]");
  detail::require(sigma_kplus1 > 0.0, "error_bound: sigma must be positive");
  return 50.0 * std::sqrt(m * n) * std::pow(1.0 / epsilon, 1.0 / k) * sigma_kplus1;
}

/// Expected size of sigma_{k+1} for a product B0*P0 that is exactly rank k in
/// exact arithmetic but formed with rounding error delta.
inline double sigma_estimate_noise_floor(double m, double n, double delta = 1e-16) {
  detail::require(m > 0 && n > 0 && delta > 0, "sigma_estimate_noise_floor: inputs must be positive");
  return std::sqrt(2.0 * std::min(m, n)) * delta;
}

struct PhaseSeconds {
  double randomize_fft = 0.0;
  double gram_schmidt = 0.0;
  double factor_r = 0.0;
  double total = 0.0;
};

struct BoundParams {
  double epsilon = 1e-20;
  double sigma_kplus1_estimate = 0.0;
  double bound_value = 0.0;
};

struct IdDiagnostics {
  PhaseSeconds phase_seconds;
  std::optional<double> err_spectral;
  std::optional<double> err_frobenius;
  std::size_t sketch_rank_retries = 0;
  BoundParams bound_params;
};

/// A ~= b * p with b = a[:, pivots] and p[:, pivots] = I.
struct IdResult {
  DenseMatrix b;
  DenseMatrix p;
  std::vector<std::size_t> pivots;
  IdDiagnostics diagnostics;
};

struct ReconstructionError {
  double spectral = 0.0;
  double frobenius = 0.0;
};

namespace detail {

inline void require_factor_shapes(const DenseMatrix& a, const DenseMatrix& b,
                                  const DenseMatrix& p) {
  require(b.rows() == a.rows() && p.cols() == a.cols() && b.cols() == p.rows(),
          "reconstruction_error: inconsistent shapes");
}

}  // namespace detail

/// ||a - b p||_F accumulated one residual column at a time.
inline double residual_frobenius_norm(const DenseMatrix& a, const DenseMatrix& b,
                                      const DenseMatrix& p, Workers workers = {}) {
  detail::require_factor_shapes(a, b, p);
  std::vector<double> col_sq(a.cols());
  parallel_for(a.cols(), workers, [&](std::size_t j) {
    std::vector<Complex> res(a.col(j).begin(), a.col(j).end());
    for (std::size_t i = 0; i < b.cols(); ++i) detail::axpy(-p(i, j), b.col(i), res);
    double s = 0.0;
    for (const Complex& z : res) s += detail::abs2(z);
    col_sq[j] = s;
  });
  double fro_sq = 0.0;
  for (double v : col_sq) fro_sq += v;
  return std::sqrt(fro_sq);
}

/// ||a - b p||_2 by power iteration on x -> a x - b (p x); the m x n residual
/// is never formed.
inline double residual_spectral_norm(const DenseMatrix& a, const DenseMatrix& b,
                                     const DenseMatrix& p, const RngState& rng,
                                     PowerIterationOptions power = {200, 1e-6}) {
  detail::require_factor_shapes(a, b, p);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  auto apply = [&](std::span<const Complex> x) {
    std::vector<Complex> y = detail::gemv(a, x);
    const std::vector<Complex> bpx = detail::gemv(b, detail::gemv(p, x));
    for (std::size_t i = 0; i < m; ++i) y[i] -= bpx[i];
    return y;
  };
  auto apply_adjoint = [&](std::span<const Complex> y) {
    std::vector<Complex> x = detail::gemv_adjoint(a, y);
    const std::vector<Complex> pby = detail::gemv_adjoint(p, detail::gemv_adjoint(b, y));
    for (std::size_t j = 0; j < n; ++j) x[j] -= pby[j];
    return x;
  };
  return spectral_norm_estimate(m, n, apply, apply_adjoint, power, rng);
}

inline ReconstructionError reconstruction_error(const DenseMatrix& a, const DenseMatrix& b,
                                                const DenseMatrix& p, const RngState& rng,
                                                Workers workers = {}) {
  return {residual_spectral_norm(a, b, p, rng), residual_frobenius_norm(a, b, p, workers)};
}

inline ReconstructionError reconstruction_error(const DenseMatrix& a, const IdResult& result,
                                                const RngState& rng, Workers workers = {}) {
  return reconstruction_error(a, result.b, result.p, rng, workers);
}

struct IdOptions {
  Workers workers{};
  double reorth_threshold = 1.0 / std::numbers::sqrt2;
  double rank_tol = 1e-13;
  /// Fill diagnostics.err_frobenius (and err_spectral when `spectral_error`).
  bool compute_errors = false;
  bool spectral_error = false;
  double epsilon = 1e-20;
  /// Rounding level used for the sigma_{k+1} noise-floor estimate.
  double noise_delta = 1e-16;
};

namespace id_tags {
inline constexpr std::uint64_t kSketch = 0x534B45544348ull;
inline constexpr std::uint64_t kRetry = 0x5245545259ull;
inline constexpr std::uint64_t kError = 0x4552524F52ull;
}  // namespace id_tags

/// Randomized interpolative decomposition of an m x n matrix (m a power of
/// two) at rank k with an l-row SRFT sketch (default l = 2k).
///
/// Phases: randomize_fft (sample plan, sketch), gram_schmidt (pivot
/// orthogonalization), factor_r (coefficient updates of non-pivot columns,
/// triangular solve, assembly of P). A rank-deficient sketch is retried once
/// with a fresh substream.
inline IdResult randomized_id(const DenseMatrix& a, std::size_t k,
                              std::optional<std::size_t> l, const RngState& rng,
                              const IdOptions& opts = {}) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t sketch_rows = l.value_or(2 * k);
  detail::require(k >= 1 && k <= m && k <= n, "randomized_id: need 1 <= k <= min(m, n)");
  detail::require(sketch_rows >= k && sketch_rows <= m, "randomized_id: need k <= l <= m");
  detail::require(is_power_of_two(m), "randomized_id: m must be a power of two");

  using clock = std::chrono::steady_clock;
  auto since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  const auto t_start = clock::now();

  IdResult result;
  PhaseSeconds& phases = result.diagnostics.phase_seconds;
  const GramSchmidtOptions gs_opts{opts.workers, opts.reorth_threshold, opts.rank_tol};

  std::optional<PivotedQr> qr;
  RngState sketch_rng = rng.split(id_tags::kSketch);
  for (int attempt = 0; attempt < 2 && !qr; ++attempt) {
    auto t0 = clock::now();
    const SrftPlan plan = sample_plan(m, sketch_rows, sketch_rng);
    const DenseMatrix y = apply_sketch(a, plan, opts.workers);
    phases.randomize_fft += since(t0);

    GramSchmidtTimings gs_times;
    try {
      qr = pivoted_gs_qr(y, k, gs_opts, &gs_times);
    } catch (const RankDeficientSketch& e) {
      phases.gram_schmidt += gs_times.gram_schmidt;
      phases.factor_r += gs_times.factor_r;
      if (attempt == 1) throw RankDeficient(e.achieved_rank());
      ++result.diagnostics.sketch_rank_retries;
      sketch_rng = rng.split(id_tags::kRetry);
      continue;
    }
    phases.gram_schmidt += gs_times.gram_schmidt;
    phases.factor_r += gs_times.factor_r;
  }

  auto t0 = clock::now();
  const TriangularBlocks blocks = triangular_blocks(*qr);
  const DenseMatrix t = solve_upper_triangular(blocks.r1, blocks.r2, opts.workers, opts.rank_tol);
  result.p = assemble_interpolation(t, qr->pivots, blocks.nonpivot_cols, n, opts.workers);
  phases.factor_r += since(t0);

  result.pivots = qr->pivots;
  result.b = extract_basis(a, result.pivots);
  phases.total = since(t_start);

  BoundParams& bound = result.diagnostics.bound_params;
  bound.epsilon = opts.epsilon;
  bound.sigma_kplus1_estimate = sigma_estimate_noise_floor(static_cast<double>(m),
                                                           static_cast<double>(n),
                                                           opts.noise_delta);
  bound.bound_value = error_bound(static_cast<double>(m), static_cast<double>(n),
                                  static_cast<double>(k), opts.epsilon,
                                  bound.sigma_kplus1_estimate);

  if (opts.compute_errors) {
    result.diagnostics.err_frobenius =
        residual_frobenius_norm(a, result.b, result.p, opts.workers);
    if (opts.spectral_error)
      result.diagnostics.err_spectral =
          residual_spectral_norm(a, result.b, result.p, rng.split(id_tags::kError));
  }
  return result;
}

}  // namespace rid
