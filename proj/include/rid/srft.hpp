#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "rid/errors.hpp"
#include "rid/fft.hpp"
#include "rid/matrix.hpp"
#include "rid/random.hpp"

namespace rid {

/// Random ingredients of the subsampled randomized Fourier transform
/// Y = S F D A: per-row phases (D) and sampled row indices (S).
struct SrftPlan {
  std::size_t m = 0;
  std::size_t l = 0;
  std::vector<double> phases;            // m values in [0, 1)
  std::vector<std::size_t> row_samples;  // l values in [0, m), with replacement

  Complex phase_factor(std::size_t row) const {
    const double angle = 2.0 * std::numbers::pi * phases[row];
    return {std::cos(angle), std::sin(angle)};
  }

  friend bool operator==(const SrftPlan&, const SrftPlan&) = default;
};

namespace srft_tags {
inline constexpr std::uint64_t kPhases = 0x5048415345ull;
inline constexpr std::uint64_t kRows = 0x524F5753ull;
}  // namespace srft_tags

inline SrftPlan sample_plan(std::size_t m, std::size_t l, const RngState& rng) {
  detail::require(l >= 1, "sample_plan: l must be >= 1");
  detail::require(l <= m, "sample_plan: l must not exceed m");
  detail::require(is_power_of_two(m), "sample_plan: m must be a power of two");

  SrftPlan plan;
  plan.m = m;
  plan.l = l;
  plan.phases.resize(m);
  plan.row_samples.resize(l);
  const RngState phase_rng = rng.split(srft_tags::kPhases);
  const RngState row_rng = rng.split(srft_tags::kRows);
  for (std::size_t j = 0; j < m; ++j) plan.phases[j] = uniform01(phase_rng, j);
  for (std::size_t j = 0; j < l; ++j)
    plan.row_samples[j] = static_cast<std::size_t>(uniform_index(row_rng, j, m));
  return plan;
}

/// Y = S F D a, computed column by column: scale rows by their phase, FFT the
/// column, gather the sampled rows. `a` is left untouched.
inline DenseMatrix apply_sketch(const DenseMatrix& a, const SrftPlan& plan, Workers workers = {}) {
  detail::require(plan.m == a.rows(), "apply_sketch: plan.m != a.rows()");
  detail::require(is_power_of_two(a.rows()), "apply_sketch: row count must be a power of two");
  detail::require(plan.phases.size() == plan.m && plan.row_samples.size() == plan.l,
                  "apply_sketch: malformed plan");

  const std::size_t m = a.rows();
  std::vector<Complex> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = plan.phase_factor(i);
  const TwiddleTable tw(m);

  DenseMatrix y(plan.l, a.cols());
  parallel_for(a.cols(), workers, [&](std::size_t j) {
    std::vector<Complex> buf(m);
    const auto src = a.col(j);
    for (std::size_t i = 0; i < m; ++i) buf[i] = detail::mul(d[i], src[i]);
    fft_column(buf, tw);
    auto dst = y.col(j);
    for (std::size_t r = 0; r < plan.l; ++r) dst[r] = buf[plan.row_samples[r]];
  });
  return y;
}

}  // namespace rid
