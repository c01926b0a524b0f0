// Serial reference vs OpenMP kernels over the sizes the scenarios use.
// Run: ./benchmarks/stratipm_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"
#include "stratipm/plane_quadrature.hpp"
#include "stratipm/propagator.hpp"
#include "stratipm/random_field.hpp"
#include "stratipm/torus.hpp"

using namespace stratipm;

namespace {

std::vector<cplx> coeffs(std::int64_t n, std::uint64_t seed) {
    std::vector<cplx> v(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t h = hash_mix(seed + static_cast<std::uint64_t>(i));
        v[static_cast<size_t>(i)] = cplx{unit_uniform(h), unit_uniform(hash_mix(h))};
    }
    return v;
}

std::vector<double> weights(std::int64_t n, std::uint64_t seed) {
    std::vector<double> v(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = unit_uniform(hash_mix(seed + static_cast<std::uint64_t>(i)));
    return v;
}

void bm_apply_factors(benchmark::State& state, bool serial) {
    const std::int64_t n = state.range(0);
    std::vector<cplx> c = coeffs(n, 1);
    std::vector<double> f = weights(n, 2);
    par::set_force_serial(serial);
    for (auto _ : state) {
        kernels::apply_factors(c.data(), f.data(), n);
        benchmark::ClobberMemory();
    }
    par::set_force_serial(false);
}

void bm_weighted_norm(benchmark::State& state, bool serial) {
    const std::int64_t n = state.range(0);
    std::vector<cplx> c = coeffs(n, 3);
    std::vector<double> w = weights(n, 4);
    par::set_force_serial(serial);
    double sink = 0.0;
    for (auto _ : state) {
        sink += kernels::weighted_norm_sq(c.data(), w.data(), n);
        benchmark::DoNotOptimize(sink);
    }
    par::set_force_serial(false);
}

void bm_matmul(benchmark::State& state, bool serial) {
    const int q = static_cast<int>(state.range(0));
    const int nv = q + 1, cols = 2 * q + 1;
    std::vector<double> A = weights(static_cast<std::int64_t>(q + 1) * nv, 5);
    std::vector<cplx> X = coeffs(static_cast<std::int64_t>(nv) * cols, 6);
    std::vector<cplx> out(static_cast<size_t>(q + 1) * cols);
    par::set_force_serial(serial);
    for (auto _ : state) {
        kernels::real_complex_matmul(A.data(), X.data(), out.data(), q + 1, nv, cols);
        benchmark::ClobberMemory();
    }
    par::set_force_serial(false);
}

void bm_plane_sweep(benchmark::State& state, bool serial) {
    auto gauss = [](double x, double y) { return std::exp(-x * x - y * y); };
    PlaneQuadrature quad({64.0, 1e-16, 8});
    PlaneSemigroupSweep sweep(gauss, quad, PlaneNormKind::L1, 0);
    par::set_force_serial(serial);
    double sink = 0.0;
    double t = 1.0;
    for (auto _ : state) {
        sink += sweep.value(1.0, t);
        t *= 1.17;
        benchmark::DoNotOptimize(sink);
    }
    par::set_force_serial(false);
}

void bm_torus_product(benchmark::State& state, bool serial) {
    const int K = static_cast<int>(state.range(0));
    InitSpec spec;
    spec.family = InitFamily::AlgebraicTail;
    spec.tail_exponent = 2.0;
    spec.kill_p0 = false;
    TorusField a = make_initial_torus(TorusGrid(K), spec);
    spec.seed = 2;
    TorusField b = make_initial_torus(TorusGrid(K), spec);
    par::set_force_serial(serial);
    for (auto _ : state) {
        TorusField p = physical_product(a, b);
        benchmark::DoNotOptimize(p.c.data());
    }
    par::set_force_serial(false);
}

}  // namespace

BENCHMARK_CAPTURE(bm_apply_factors, serial, true)->Arg(1 << 22);
BENCHMARK_CAPTURE(bm_apply_factors, openmp, false)->Arg(1 << 22);
BENCHMARK_CAPTURE(bm_weighted_norm, serial, true)->Arg(1 << 22);
BENCHMARK_CAPTURE(bm_weighted_norm, openmp, false)->Arg(1 << 22);
BENCHMARK_CAPTURE(bm_matmul, serial, true)->Arg(256);
BENCHMARK_CAPTURE(bm_matmul, openmp, false)->Arg(256);
BENCHMARK_CAPTURE(bm_plane_sweep, serial, true);
BENCHMARK_CAPTURE(bm_plane_sweep, openmp, false);
BENCHMARK_CAPTURE(bm_torus_product, serial, true)->Arg(128);
BENCHMARK_CAPTURE(bm_torus_product, openmp, false)->Arg(128);

BENCHMARK_MAIN();
