// OpenMP-backed loop helper. Callers keep a serial path (parallel = false)
// as the reference; results must be written to per-index slots so the
// aggregation order never depends on scheduling.
#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace inferon {

template <class F>
void parallel_for(long n, bool parallel, F&& body) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)parallel;
#endif
  for (long i = 0; i < n; ++i) body(i);
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace inferon
