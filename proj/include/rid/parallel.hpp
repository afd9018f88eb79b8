#pragma once

#include <cstddef>
#include <cstdint>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rid {

/// Execution width for a parallel region. Every region honors it exactly;
/// work is split into contiguous static chunks so results never depend on it.
struct Workers {
  int count = 1;

  static Workers hardware() {
    unsigned hc = std::thread::hardware_concurrency();
    return Workers{hc == 0 ? 1 : static_cast<int>(hc)};
  }
};

/// Calls body(i) for i in [0, n). Iterations must be independent.
template <class Body>
void parallel_for(std::size_t n, Workers workers, Body&& body) {
  if (workers.count <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for num_threads(workers.count) schedule(static)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace rid
