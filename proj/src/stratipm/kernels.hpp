#pragma once

#include <complex>
#include <cstdint>

// Hot loops of the multiplier pipelines. Each kernel has a serial reference
// twin used by the tests and the benchmark target; the unsuffixed entry
// points run OpenMP-parallel unless par::set_force_serial(true).

namespace stratipm::kernels {

using cplx = std::complex<double>;

// c[i] *= f[i]
void apply_factors_serial(cplx* c, const double* f, std::int64_t n);
void apply_factors(cplx* c, const double* f, std::int64_t n);

// sum w[i] |c[i]|^2
double weighted_norm_sq_serial(const cplx* c, const double* w, std::int64_t n);
double weighted_norm_sq(const cplx* c, const double* w, std::int64_t n);

// sum w[i] |c[i]|
double weighted_abs_sum_serial(const cplx* c, const double* w, std::int64_t n);
double weighted_abs_sum(const cplx* c, const double* w, std::int64_t n);

// out[i] = a[i] * b[i]  (physical-space products)
void pointwise_multiply_serial(const double* a, const double* b, double* out, std::int64_t n);
void pointwise_multiply(const double* a, const double* b, double* out, std::int64_t n);

// out[r, j] = sum_k A[r, k] X[k, j]; A real (m x k), X complex (k x n), out complex (m x n).
// Row-major. The strip vertical transforms are this product.
void real_complex_matmul_serial(const double* A, const cplx* X, cplx* out, std::int64_t m,
                                std::int64_t k, std::int64_t n);
void real_complex_matmul(const double* A, const cplx* X, cplx* out, std::int64_t m,
                         std::int64_t k, std::int64_t n);

double max_abs_serial(const double* a, std::int64_t n);
double max_abs(const double* a, std::int64_t n);

}  // namespace stratipm::kernels
