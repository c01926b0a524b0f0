#pragma once

#include <cstdint>
#include <vector>

namespace stratipm::par {

// Worker cap: min(OMP max threads, STRAT_IPM_THREADS if set).
int num_threads();

// Force-serial switch used by tests and the benchmark driver.
void set_force_serial(bool on);
bool force_serial();

// Deterministic parallel sum: per-thread partials combined in thread order,
// so results are reproducible for a fixed thread count.
template <class F>
double sum_indexed(std::int64_t n, F&& body);

template <class F>
void for_indexed(std::int64_t n, F&& body);

}  // namespace stratipm::par

#include <omp.h>

namespace stratipm::par {

template <class F>
double sum_indexed(std::int64_t n, F&& body) {
    if (force_serial() || num_threads() == 1) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < n; ++i) acc += body(i);
        return acc;
    }
    const int nt = num_threads();
    std::vector<double> partial(static_cast<size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int tid = omp_get_thread_num();
        double acc = 0.0;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) acc += body(i);
        partial[static_cast<size_t>(tid)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <class F>
void for_indexed(std::int64_t n, F&& body) {
    if (force_serial() || num_threads() == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#pragma omp parallel for schedule(static) num_threads(num_threads())
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace stratipm::par
