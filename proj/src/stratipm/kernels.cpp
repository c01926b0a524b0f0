#include "stratipm/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stratipm/par.hpp"

namespace stratipm::kernels {

namespace {
// Below this size the fork/join cost dominates.
constexpr std::int64_t kParallelCutoff = 1 << 12;

bool go_serial(std::int64_t n) {
    return par::force_serial() || par::num_threads() == 1 || n < kParallelCutoff;
}
}  // namespace

void apply_factors_serial(cplx* c, const double* f, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) c[i] *= f[i];
}

void apply_factors(cplx* c, const double* f, std::int64_t n) {
    if (go_serial(n)) return apply_factors_serial(c, f, n);
#pragma omp parallel for schedule(static) num_threads(par::num_threads())
    for (std::int64_t i = 0; i < n; ++i) c[i] *= f[i];
}

double weighted_norm_sq_serial(const cplx* c, const double* w, std::int64_t n) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) acc += w[i] * std::norm(c[i]);
    return acc;
}

double weighted_norm_sq(const cplx* c, const double* w, std::int64_t n) {
    if (go_serial(n)) return weighted_norm_sq_serial(c, w, n);
    return par::sum_indexed(n, [&](std::int64_t i) { return w[i] * std::norm(c[i]); });
}

double weighted_abs_sum_serial(const cplx* c, const double* w, std::int64_t n) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) acc += w[i] * std::abs(c[i]);
    return acc;
}

double weighted_abs_sum(const cplx* c, const double* w, std::int64_t n) {
    if (go_serial(n)) return weighted_abs_sum_serial(c, w, n);
    return par::sum_indexed(n, [&](std::int64_t i) { return w[i] * std::abs(c[i]); });
}

void pointwise_multiply_serial(const double* a, const double* b, double* out, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void pointwise_multiply(const double* a, const double* b, double* out, std::int64_t n) {
    if (go_serial(n)) return pointwise_multiply_serial(a, b, out, n);
#pragma omp parallel for schedule(static) num_threads(par::num_threads())
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void real_complex_matmul_serial(const double* A, const cplx* X, cplx* out, std::int64_t m,
                                std::int64_t k, std::int64_t n) {
    for (std::int64_t r = 0; r < m; ++r) {
        cplx* orow = out + r * n;
        std::fill(orow, orow + n, cplx{0.0, 0.0});
        const double* arow = A + r * k;
        for (std::int64_t kk = 0; kk < k; ++kk) {
            const double a = arow[kk];
            if (a == 0.0) continue;
            const cplx* xrow = X + kk * n;
            for (std::int64_t j = 0; j < n; ++j) orow[j] += a * xrow[j];
        }
    }
}

void real_complex_matmul(const double* A, const cplx* X, cplx* out, std::int64_t m,
                         std::int64_t k, std::int64_t n) {
    if (go_serial(m * n)) return real_complex_matmul_serial(A, X, out, m, k, n);
#pragma omp parallel for schedule(static) num_threads(par::num_threads())
    for (std::int64_t r = 0; r < m; ++r) {
        cplx* orow = out + r * n;
        std::fill(orow, orow + n, cplx{0.0, 0.0});
        const double* arow = A + r * k;
        for (std::int64_t kk = 0; kk < k; ++kk) {
            const double a = arow[kk];
            if (a == 0.0) continue;
            const cplx* xrow = X + kk * n;
            for (std::int64_t j = 0; j < n; ++j) orow[j] += a * xrow[j];
        }
    }
}

double max_abs_serial(const double* a, std::int64_t n) {
    double m = 0.0;
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double max_abs(const double* a, std::int64_t n) {
    if (go_serial(n)) return max_abs_serial(a, n);
    const int nt = par::num_threads();
    std::vector<double> partial(static_cast<size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int tid = omp_get_thread_num();
        double m = 0.0;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
        partial[static_cast<size_t>(tid)] = m;
    }
    double m = 0.0;
    for (double p : partial) m = std::max(m, p);
    return m;
}

}  // namespace stratipm::kernels
