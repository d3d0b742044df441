#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pgkit {

// Resolves a worker count: a positive request wins; otherwise the PGKIT_JOBS
// environment variable; otherwise the available hardware parallelism
// (1 without OpenMP).
inline int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PGKIT_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Evaluates fn(b) for every block b in [0, nblocks), in parallel when
// jobs > 1, and returns the results indexed by block. Downstream reductions
// run over the vector in ascending block order, so results are deterministic
// and independent of the worker count.
template <typename R, typename Fn>
std::vector<R> run_blocks(int nblocks, int jobs, Fn fn) {
  std::vector<R> results(static_cast<std::size_t>(nblocks));
#ifdef _OPENMP
  if (jobs > 1 && nblocks > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int b = 0; b < nblocks; ++b) results[static_cast<std::size_t>(b)] = fn(b);
    return results;
  }
#endif
  for (int b = 0; b < nblocks; ++b) results[static_cast<std::size_t>(b)] = fn(b);
  return results;
}

}  // namespace pgkit
