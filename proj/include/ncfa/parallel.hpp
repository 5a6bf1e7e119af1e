#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncfa::par {

// Number of workers to use when the caller passes jobs <= 0:
// NCFA_JOBS from the environment, else the OpenMP default, else 1.
inline int default_jobs() {
    if (const char* env = std::getenv("NCFA_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline int resolve_jobs(int jobs) { return jobs >= 1 ? jobs : default_jobs(); }

// Indexed parallel loop. jobs == 1 runs the plain serial loop (the reference
// path used by tests); jobs > 1 distributes indices over an OpenMP team.
// Work items must be independent; callers write results into per-index slots
// so that serial and parallel runs produce bitwise-identical output.
template <class F>
void for_index(std::size_t n, int jobs, F&& body) {
    jobs = resolve_jobs(jobs);
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace ncfa::par
