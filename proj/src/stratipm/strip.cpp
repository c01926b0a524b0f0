#include "stratipm/strip.hpp"

#include <algorithm>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/fft.hpp"
#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"
#include "stratipm/torus.hpp"  // fft_friendly_size

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

StripGrid::StripGrid(int P, int Q, int Mh, int Mv)
    : pmodes(P), qmodes(Q), phys_x(Mh), vsegments(Mv) {
    if (P < 0) throw ParameterError("StripGrid: pmodes must be >= 0");
    if (Q < 1) throw ParameterError("StripGrid: qmodes must be >= 1");
    if (phys_x == 0) phys_x = fft_friendly_size(2 * P + 1);
    if (vsegments == 0) vsegments = Q + 1;
    if (phys_x < 2 * P + 1) throw ParameterError("StripGrid: phys_x must be >= 2P+1");
    // quadrature exact for cosine index <= 2*Mv-1; forward needs index 2Q
    if (2 * vsegments - 1 < 2 * qmodes)
        throw ParameterError("StripGrid: vsegments too small for exact vertical quadrature");
}

double strip_basis_b(int q, double x2) {
    const double a = 0.5 * kPi * q * x2;
    return (q % 2 == 0) ? std::sin(a) : std::cos(a);
}

double strip_basis_c(int q, double x2) {
    if (q == 0) return kInvSqrt2;
    const double a = 0.5 * kPi * q * x2;
    return (q % 2 == 0) ? std::cos(a) : -std::sin(a);
}

double hermitian_residual_p(const std::vector<cplx>& c, const StripGrid& g) {
    double r = 0.0;
    for (int p = 0; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q) {
            const cplx d = c[static_cast<size_t>(g.index(p, q))] -
                           std::conj(c[static_cast<size_t>(g.index(-p, q))]);
            r = std::max(r, std::abs(d));
        }
    return r;
}

StripTransformer::StripTransformer(const StripGrid& grid)
    : grid_(grid),
      rows_(std::make_unique<Dft1Rows>(grid.vnodes(), grid.phys_x)) {
    const int nv = grid_.vnodes();
    const int nq = grid_.qcols();
    beval_.assign(static_cast<size_t>(nv) * nq, 0.0);
    ceval_.assign(static_cast<size_t>(nv) * nq, 0.0);
    bquad_.assign(static_cast<size_t>(nq) * nv, 0.0);
    cquad_.assign(static_cast<size_t>(nq) * nv, 0.0);
    for (int j = 0; j < nv; ++j) {
        const double x2 = grid_.x2(j);
        const double w = grid_.weight(j);
        for (int q = 0; q < nq; ++q) {
            const double b = strip_basis_b(q, x2);
            const double c = strip_basis_c(q, x2);
            beval_[static_cast<size_t>(j) * nq + q] = b;
            ceval_[static_cast<size_t>(j) * nq + q] = c;
            bquad_[static_cast<size_t>(q) * nv + j] = w * b;
            cquad_[static_cast<size_t>(q) * nv + j] = w * c;
        }
    }
    hbuf_.assign(static_cast<size_t>(nv) * grid_.prows(), cplx{0.0, 0.0});
    tbuf_.assign(static_cast<size_t>(nq) * grid_.prows(), cplx{0.0, 0.0});
}

StripTransformer::~StripTransformer() = default;

template <class Field>
Field StripTransformer::forward_impl(const RealArray2& samples, bool is_x) {
    const int nv = grid_.vnodes();
    const int Mh = grid_.phys_x;
    if (samples.n0 != nv || samples.n1 != Mh)
        throw ShapeError("strip forward: samples are " + std::to_string(samples.n0) + "x" +
                         std::to_string(samples.n1) + ", grid expects " + std::to_string(nv) +
                         "x" + std::to_string(Mh));
    for (double x : samples.v)
        if (!std::isfinite(x)) throw ParameterError("strip forward: non-finite sample");

    // (1) horizontal DFT of every vertical-node row
    cplx* rb = rows_->data();
    par::for_indexed(static_cast<std::int64_t>(nv) * Mh,
                     [&](std::int64_t i) { rb[i] = cplx{samples.v[static_cast<size_t>(i)], 0.0}; });
    rows_->forward();

    // (2) gather p in [-P, P]: hbuf_[j * prows + (p+P)]
    const int P = grid_.pmodes;
    const int prows = grid_.prows();
    const double scale = 1.0 / Mh;
    for (int j = 0; j < nv; ++j)
        for (int p = -P; p <= P; ++p) {
            const int ip = (p % Mh + Mh) % Mh;
            hbuf_[static_cast<size_t>(j) * prows + (p + P)] =
                scale * rb[static_cast<std::int64_t>(j) * Mh + ip];
        }

    // (3) vertical quadrature against the basis
    const int nq = grid_.qcols();
    const double* quad = is_x ? bquad_.data() : cquad_.data();
    kernels::real_complex_matmul(quad, hbuf_.data(), tbuf_.data(), nq, nv, prows);

    Field out{grid_};
    for (int p = -P; p <= P; ++p)
        for (int q = 0; q < nq; ++q)
            out.at(p, q) = tbuf_[static_cast<size_t>(q) * prows + (p + P)];
    if (is_x)
        for (int p = -P; p <= P; ++p) out.at(p, 0) = cplx{0.0, 0.0};
    out.real_valued = true;
    return out;
}

template <class Field>
RealArray2 StripTransformer::evaluate_impl(const Field& f, bool is_x) {
    const int P = f.grid.pmodes;
    const int nqf = f.grid.qcols();
    if (P > grid_.pmodes || f.grid.qmodes > grid_.qmodes)
        throw ShapeError("strip evaluate: field modes exceed grid capacity");
    const int prows = grid_.prows();
    const int nv = grid_.vnodes();
    const int nq = grid_.qcols();

    // tbuf_[q * prows + pcol] = coefficients (zero-extended to this grid)
    std::fill(tbuf_.begin(), tbuf_.end(), cplx{0.0, 0.0});
    for (int p = -P; p <= P; ++p)
        for (int q = 0; q < nqf; ++q)
            tbuf_[static_cast<size_t>(q) * prows + (p + grid_.pmodes)] = f.at(p, q);

    const double* eval = is_x ? beval_.data() : ceval_.data();
    kernels::real_complex_matmul(eval, tbuf_.data(), hbuf_.data(), nv, nq, prows);

    // scatter p-modes into DFT rows and invert horizontally
    const int Mh = grid_.phys_x;
    cplx* rb = rows_->data();
    par::for_indexed(static_cast<std::int64_t>(nv) * Mh, [&](std::int64_t i) { rb[i] = cplx{0, 0}; });
    for (int j = 0; j < nv; ++j)
        for (int p = -grid_.pmodes; p <= grid_.pmodes; ++p) {
            const int ip = (p % Mh + Mh) % Mh;
            rb[static_cast<std::int64_t>(j) * Mh + ip] =
                hbuf_[static_cast<size_t>(j) * prows + (p + grid_.pmodes)];
        }
    rows_->backward();

    RealArray2 out(nv, Mh);
    par::for_indexed(static_cast<std::int64_t>(nv) * Mh,
                     [&](std::int64_t i) { out.v[static_cast<size_t>(i)] = rb[i].real(); });
    return out;
}

namespace {
double rel_residual(const RealArray2& a, const RealArray2& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i) {
        num = std::max(num, std::abs(a.v[i] - b.v[i]));
        den = std::max(den, std::abs(a.v[i]));
    }
    return num / std::max(den, 1e-300);
}
}  // namespace

StripFieldX StripTransformer::forward_x(const RealArray2& samples, bool parity_check,
                                        double parity_tol) {
    StripFieldX out = forward_impl<StripFieldX>(samples, true);
    if (parity_check) {
        RealArray2 back = evaluate_impl(out, true);
        if (rel_residual(samples, back) > parity_tol)
            throw ParityError("strip forward_x: samples are not X-type to tolerance "
                              "(projection residual too large; wrong space?)");
    }
    return out;
}

StripFieldY StripTransformer::forward_y(const RealArray2& samples, bool parity_check,
                                        double parity_tol) {
    StripFieldY out = forward_impl<StripFieldY>(samples, false);
    if (parity_check) {
        RealArray2 back = evaluate_impl(out, false);
        if (rel_residual(samples, back) > parity_tol)
            throw ParityError("strip forward_y: samples are not Y-type to tolerance "
                              "(projection residual too large; wrong space?)");
    }
    return out;
}

RealArray2 StripTransformer::evaluate_x(const StripFieldX& f) { return evaluate_impl(f, true); }
RealArray2 StripTransformer::evaluate_y(const StripFieldY& f) { return evaluate_impl(f, false); }

RealArray2 StripTransformer::inverse_x(const StripFieldX& f) {
    if (f.real_valued) {
        double scale = 0.0;
        for (const cplx& z : f.c) scale = std::max(scale, std::abs(z));
        if (hermitian_residual_p(f.c, f.grid) > 1e-10 * std::max(scale, 1e-300))
            throw ConsistencyError("strip inverse_x: broken Hermitian symmetry on a real field");
    }
    return evaluate_impl(f, true);
}

RealArray2 StripTransformer::inverse_y(const StripFieldY& f) {
    if (f.real_valued) {
        double scale = 0.0;
        for (const cplx& z : f.c) scale = std::max(scale, std::abs(z));
        if (hermitian_residual_p(f.c, f.grid) > 1e-10 * std::max(scale, 1e-300))
            throw ConsistencyError("strip inverse_y: broken Hermitian symmetry on a real field");
    }
    return evaluate_impl(f, false);
}

StripFieldX strip_forward_x(const RealArray2& samples, const StripGrid& grid) {
    StripTransformer t(grid);
    return t.forward_x(samples);
}

StripFieldY strip_forward_y(const RealArray2& samples, const StripGrid& grid) {
    StripTransformer t(grid);
    return t.forward_y(samples);
}

RealArray2 strip_inverse_x(const StripFieldX& f) {
    StripTransformer t(f.grid);
    return t.inverse_x(f);
}

RealArray2 strip_inverse_y(const StripFieldY& f) {
    StripTransformer t(f.grid);
    return t.inverse_y(f);
}

StripGrid padded_grid(const StripGrid& g) {
    return StripGrid(g.pmodes, g.qmodes, fft_friendly_size(g.dealias_min_phys_x()),
                     std::max(g.dealias_min_vsegments(), g.qmodes + 1));
}

StripFieldX physical_product(const StripFieldX& a, const StripFieldY& b) {
    if (!(a.grid == b.grid)) throw ShapeError("physical_product: incompatible strip grids");
    StripTransformer padded(padded_grid(a.grid));
    RealArray2 pa = padded.evaluate_x(a);
    RealArray2 pb = padded.evaluate_y(b);
    RealArray2 prod(pa.n0, pa.n1);
    kernels::pointwise_multiply(pa.v.data(), pb.v.data(), prod.v.data(),
                                static_cast<std::int64_t>(prod.v.size()));
    StripFieldX fp = padded.forward_x(prod, false);
    StripFieldX out{a.grid};
    for (int p = -a.grid.pmodes; p <= a.grid.pmodes; ++p)
        for (int q = 1; q <= a.grid.qmodes; ++q) out.at(p, q) = fp.at(p, q);
    return out;
}

StripFieldY physical_product(const StripFieldX& a, const StripFieldX& b) {
    if (!(a.grid == b.grid)) throw ShapeError("physical_product: incompatible strip grids");
    StripTransformer padded(padded_grid(a.grid));
    RealArray2 pa = padded.evaluate_x(a);
    RealArray2 pb = padded.evaluate_x(b);
    RealArray2 prod(pa.n0, pa.n1);
    kernels::pointwise_multiply(pa.v.data(), pb.v.data(), prod.v.data(),
                                static_cast<std::int64_t>(prod.v.size()));
    StripFieldY fp = padded.forward_y(prod, false);
    StripFieldY out{a.grid};
    for (int p = -a.grid.pmodes; p <= a.grid.pmodes; ++p)
        for (int q = 0; q <= a.grid.qmodes; ++q) out.at(p, q) = fp.at(p, q);
    return out;
}

StripFieldY physical_product(const StripFieldY& a, const StripFieldY& b) {
    if (!(a.grid == b.grid)) throw ShapeError("physical_product: incompatible strip grids");
    StripTransformer padded(padded_grid(a.grid));
    RealArray2 pa = padded.evaluate_y(a);
    RealArray2 pb = padded.evaluate_y(b);
    RealArray2 prod(pa.n0, pa.n1);
    kernels::pointwise_multiply(pa.v.data(), pb.v.data(), prod.v.data(),
                                static_cast<std::int64_t>(prod.v.size()));
    StripFieldY fp = padded.forward_y(prod, false);
    StripFieldY out{a.grid};
    for (int p = -a.grid.pmodes; p <= a.grid.pmodes; ++p)
        for (int q = 0; q <= a.grid.qmodes; ++q) out.at(p, q) = fp.at(p, q);
    return out;
}

double boundary_trace_max(const StripFieldX& f) {
    StripTransformer t(f.grid);
    RealArray2 phys = t.evaluate_x(f);
    double m = 0.0;
    for (int i = 0; i < phys.n1; ++i) {
        m = std::max(m, std::abs(phys.at(0, i)));
        m = std::max(m, std::abs(phys.at(phys.n0 - 1, i)));
    }
    return m;
}

}  // namespace stratipm
