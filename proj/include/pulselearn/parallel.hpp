#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef PULSELEARN_HAVE_OPENMP
#include <omp.h>
#endif

namespace pulselearn {

// Number of workers to use when the caller passes jobs <= 0 ("auto").
inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
#ifdef PULSELEARN_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Index-parallel loop: fn(i) for i in [0, n).  jobs == 1 runs the plain
// serial loop (the reference path used to validate the parallel one); any
// other value fans out with OpenMP.  Bodies must write only to their own
// slot and draw randomness from per-index derived seeds, which keeps results
// bit-identical regardless of worker count.  The first exception thrown by
// any iteration is rethrown after the loop completes.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  jobs = resolve_jobs(jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef PULSELEARN_HAVE_OPENMP
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace pulselearn
