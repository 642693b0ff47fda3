#pragma once

#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qarrival {

enum class Exec { serial, parallel };

/// Worker cap: min(OMP max threads, QARRIVAL_THREADS when set).
inline int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("QARRIVAL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

/// Static-schedule parallel loop over [0, n). Results must be written to
/// disjoint slots so serial and parallel execution are bit-identical.
template <class F>
void parallel_for(long n, Exec mode, F&& body) {
#ifdef _OPENMP
    if (mode == Exec::parallel) {
        const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)mode;
    for (long i = 0; i < n; ++i) body(i);
}

} // namespace qarrival
