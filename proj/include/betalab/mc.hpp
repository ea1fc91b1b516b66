#pragma once
// Deterministic parallel Monte-Carlo driver.
//
// Each sample must be a pure function of its index (typically via a derived
// seed), so samples can run in any order on any number of threads.  Samples
// are summed inside fixed-size blocks and the block partials are reduced in
// index order, which makes every accumulated statistic byte-identical no
// matter how many worker threads execute the loop.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace betalab {

/// Applies the BETALAB_THREADS environment variable (when set and positive)
/// to the worker pool.  No-op in single-threaded builds.
inline void apply_thread_env() {
#ifdef _OPENMP
  if (const char* v = std::getenv("BETALAB_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

/// Runs `fn(sample_index, accumulator)` for sample_index in [0, samples) and
/// returns the ordered-reduced accumulator totals.  `fn` must be thread-safe,
/// must not throw, and must depend only on its index.
template <std::size_t NStats, class PerSample>
inline std::array<double, NStats> blocked_monte_carlo(int samples,
                                                      PerSample&& fn) {
  constexpr int block_size = 4096;
  const int nblocks = samples > 0 ? (samples + block_size - 1) / block_size : 0;
  std::vector<std::array<double, NStats>> partial(nblocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int b = 0; b < nblocks; ++b) {
    auto& acc = partial[b];
    acc.fill(0.0);
    const int lo = b * block_size;
    const int hi = std::min(samples, lo + block_size);
    for (int i = lo; i < hi; ++i) fn(i, acc);
  }
  std::array<double, NStats> total;
  total.fill(0.0);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < NStats; ++k) total[k] += p[k];
  }
  return total;
}

}  // namespace betalab
