#include <cmath>
#include <vector>

#include "doctest.h"
#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"
#include "stratipm/random_field.hpp"

using namespace stratipm;

namespace {
std::vector<cplx> random_cplx(std::int64_t n, std::uint64_t seed) {
    std::vector<cplx> v(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t h = hash_mix(seed + static_cast<std::uint64_t>(i));
        v[static_cast<size_t>(i)] =
            cplx{2.0 * unit_uniform(h) - 1.0, 2.0 * unit_uniform(hash_mix(h)) - 1.0};
    }
    return v;
}

std::vector<double> random_real(std::int64_t n, std::uint64_t seed) {
    std::vector<double> v(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = 2.0 * unit_uniform(hash_mix(seed + static_cast<std::uint64_t>(i))) - 1.0;
    return v;
}
}  // namespace

TEST_CASE("parallel kernels agree with their serial references") {
    const std::int64_t n = 1 << 16;
    std::vector<cplx> c = random_cplx(n, 11);
    std::vector<double> f = random_real(n, 22);

    SUBCASE("apply_factors") {
        std::vector<cplx> a = c, b = c;
        kernels::apply_factors_serial(a.data(), f.data(), n);
        kernels::apply_factors(b.data(), f.data(), n);
        for (std::int64_t i = 0; i < n; i += 997)
            CHECK(std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]) == 0.0);
    }
    SUBCASE("weighted reductions") {
        std::vector<double> w = random_real(n, 33);
        for (double& x : w) x = std::abs(x);
        const double s1 = kernels::weighted_norm_sq_serial(c.data(), w.data(), n);
        const double s2 = kernels::weighted_norm_sq(c.data(), w.data(), n);
        CHECK(s2 == doctest::Approx(s1).epsilon(1e-13));
        const double a1 = kernels::weighted_abs_sum_serial(c.data(), w.data(), n);
        const double a2 = kernels::weighted_abs_sum(c.data(), w.data(), n);
        CHECK(a2 == doctest::Approx(a1).epsilon(1e-13));
    }
    SUBCASE("pointwise multiply and max_abs") {
        std::vector<double> a = random_real(n, 44), b = random_real(n, 55);
        std::vector<double> o1(static_cast<size_t>(n)), o2(static_cast<size_t>(n));
        kernels::pointwise_multiply_serial(a.data(), b.data(), o1.data(), n);
        kernels::pointwise_multiply(a.data(), b.data(), o2.data(), n);
        CHECK(o1 == o2);
        CHECK(kernels::max_abs(a.data(), n) == kernels::max_abs_serial(a.data(), n));
    }
}

TEST_CASE("real_complex_matmul matches a naive triple loop") {
    const int m = 37, k = 53, n = 41;
    std::vector<double> A = random_real(static_cast<std::int64_t>(m) * k, 7);
    std::vector<cplx> X = random_cplx(static_cast<std::int64_t>(k) * n, 8);
    std::vector<cplx> out(static_cast<size_t>(m) * n), ref(static_cast<size_t>(m) * n);
    kernels::real_complex_matmul(A.data(), X.data(), out.data(), m, k, n);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (int kk = 0; kk < k; ++kk)
                acc += A[static_cast<size_t>(r) * k + kk] * X[static_cast<size_t>(kk) * n + j];
            ref[static_cast<size_t>(r) * n + j] = acc;
        }
    double worst = 0.0;
    for (size_t i = 0; i < out.size(); ++i) worst = std::max(worst, std::abs(out[i] - ref[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("force_serial switch reroutes the parallel entry points") {
    par::set_force_serial(true);
    const std::int64_t n = 1 << 15;
    std::vector<cplx> c = random_cplx(n, 5);
    std::vector<double> w = random_real(n, 6);
    for (double& x : w) x = std::abs(x);
    const double s = kernels::weighted_norm_sq(c.data(), w.data(), n);
    par::set_force_serial(false);
    CHECK(s == kernels::weighted_norm_sq_serial(c.data(), w.data(), n));
}
