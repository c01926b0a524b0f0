#include "stratipm/torus.hpp"

#include <algorithm>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/fft.hpp"
#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"

namespace stratipm {

int fft_friendly_size(int n) {
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

TorusGrid::TorusGrid(int K, int M, double L) : modes(K), phys(M), length(L) {
    if (K < 0) throw ParameterError("TorusGrid: modes must be >= 0");
    if (L <= 0.0) throw ParameterError("TorusGrid: length must be > 0");
    if (phys == 0) phys = fft_friendly_size(2 * K + 1);
    if (phys < 2 * K + 1)
        throw ParameterError("TorusGrid: phys resolution must be >= 2K+1");
}

double hermitian_residual(const TorusField& f) {
    const int K = f.grid.modes;
    double r = 0.0;
    for (int n1 = 0; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 < 0) continue;
            const cplx d = f.at(n1, n2) - std::conj(f.at(-n1, -n2));
            r = std::max(r, std::abs(d));
        }
    return r;
}

void hermitian_symmetrize(TorusField& f) {
    const int K = f.grid.modes;
    for (int n1 = 0; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 <= 0) continue;
            const cplx avg = 0.5 * (f.at(n1, n2) + std::conj(f.at(-n1, -n2)));
            f.at(n1, n2) = avg;
            f.at(-n1, -n2) = std::conj(avg);
        }
    f.at(0, 0) = cplx{f.at(0, 0).real(), 0.0};
}

TorusTransformer::TorusTransformer(const TorusGrid& grid)
    : grid_(grid), dft_(std::make_unique<Dft2>(grid.phys, grid.phys)) {}

TorusTransformer::~TorusTransformer() = default;

TorusField TorusTransformer::forward(const RealArray2& samples) {
    return forward_truncated(samples, grid_);
}

TorusField TorusTransformer::forward_truncated(const RealArray2& samples, const TorusGrid& target) {
    const int M = grid_.phys;
    if (samples.n0 != M || samples.n1 != M)
        throw ShapeError("torus_forward: samples are " + std::to_string(samples.n0) + "x" +
                         std::to_string(samples.n1) + ", grid expects " + std::to_string(M) + "x" +
                         std::to_string(M));
    if (target.modes > (M - 1) / 2)
        throw ShapeError("torus_forward: target modes exceed grid capacity");
    for (double x : samples.v)
        if (!std::isfinite(x)) throw ParameterError("torus_forward: non-finite sample");

    cplx* buf = dft_->data();
    const std::int64_t total = static_cast<std::int64_t>(M) * M;
    par::for_indexed(total, [&](std::int64_t i) { buf[i] = cplx{samples.v[static_cast<size_t>(i)], 0.0}; });
    dft_->forward();

    TorusField out{TorusGrid(target.modes, target.phys, target.length)};
    const double scale = 1.0 / (static_cast<double>(M) * M);
    const int K = target.modes;
    for (int n1 = -K; n1 <= K; ++n1) {
        const int i1 = (n1 % M + M) % M;
        for (int n2 = -K; n2 <= K; ++n2) {
            const int i2 = (n2 % M + M) % M;
            out.at(n1, n2) = scale * buf[static_cast<std::int64_t>(i1) * M + i2];
        }
    }
    out.real_valued = true;
    hermitian_symmetrize(out);  // clears roundoff asymmetry from the DFT
    return out;
}

RealArray2 TorusTransformer::evaluate(const TorusField& f) {
    const int M = grid_.phys;
    const int K = f.grid.modes;
    if (K > (M - 1) / 2) throw ShapeError("torus evaluate: field modes exceed grid capacity");

    cplx* buf = dft_->data();
    const std::int64_t total = static_cast<std::int64_t>(M) * M;
    par::for_indexed(total, [&](std::int64_t i) { buf[i] = cplx{0.0, 0.0}; });
    for (int n1 = -K; n1 <= K; ++n1) {
        const int i1 = (n1 % M + M) % M;
        for (int n2 = -K; n2 <= K; ++n2) {
            const int i2 = (n2 % M + M) % M;
            buf[static_cast<std::int64_t>(i1) * M + i2] = f.at(n1, n2);
        }
    }
    dft_->backward();

    RealArray2 out(M, M);
    par::for_indexed(total, [&](std::int64_t i) { out.v[static_cast<size_t>(i)] = buf[i].real(); });
    return out;
}

RealArray2 TorusTransformer::inverse(const TorusField& f) {
    if (f.real_valued) {
        double scale = 0.0;
        for (const cplx& z : f.c) scale = std::max(scale, std::abs(z));
        if (hermitian_residual(f) > 1e-10 * std::max(scale, 1e-300))
            throw ConsistencyError("torus_inverse: field flagged real but Hermitian symmetry is broken");
    }
    return evaluate(f);
}

TorusField torus_forward(const RealArray2& samples, const TorusGrid& grid) {
    TorusTransformer t(grid);
    return t.forward(samples);
}

RealArray2 torus_inverse(const TorusField& f) {
    TorusTransformer t(f.grid);
    return t.inverse(f);
}

TorusGrid padded_grid(const TorusGrid& g) {
    return TorusGrid(g.modes, fft_friendly_size(g.dealias_min_phys()), g.length);
}

TorusField physical_product(const TorusField& a, const TorusField& b) {
    if (!(a.grid == b.grid)) throw ShapeError("physical_product: incompatible grids");
    TorusTransformer padded(padded_grid(a.grid));
    RealArray2 pa = padded.evaluate(a);
    RealArray2 pb = padded.evaluate(b);
    RealArray2 prod(pa.n0, pa.n1);
    kernels::pointwise_multiply(pa.v.data(), pb.v.data(), prod.v.data(),
                                static_cast<std::int64_t>(prod.v.size()));
    return padded.forward_truncated(prod, a.grid);
}

}  // namespace stratipm
