#include "stratipm/operators.hpp"

#include <algorithm>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;

double torus_w2(const TorusGrid& g, int n1, int n2) {
    const double x1 = g.xi1(n1), x2 = g.xi2(n2);
    return x1 * x1 + x2 * x2;
}

double strip_w2(int p, int q) {
    const double a = 2.0 * kPi * p;
    const double b = 0.5 * kPi * q;
    return a * a + b * b;
}

template <class W2>
double norm_square_lattice(const std::vector<cplx>& c, int rows, int cols, const NormSpec& spec,
                           W2&& w2_of, double parseval_factor, double aniso_factor) {
    const std::int64_t n = static_cast<std::int64_t>(rows) * cols;
    switch (spec.kind) {
        case NormKind::L2:
        case NormKind::SobolevH: {
            const double s = spec.kind == NormKind::L2 ? 0.0 : spec.order;
            const double acc = par::sum_indexed(n, [&](std::int64_t i) {
                const int r = static_cast<int>(i / cols), k = static_cast<int>(i % cols);
                return std::pow(1.0 + w2_of(r, k), s) * std::norm(c[static_cast<size_t>(i)]);
            });
            return std::sqrt(parseval_factor * acc);
        }
        case NormKind::HomogeneousH: {
            const double s = spec.order;
            const double acc = par::sum_indexed(n, [&](std::int64_t i) {
                const int r = static_cast<int>(i / cols), k = static_cast<int>(i % cols);
                const double w2 = w2_of(r, k);
                return (w2 == 0.0 && s > 0.0 ? 0.0 : std::pow(w2, s)) *
                       std::norm(c[static_cast<size_t>(i)]);
            });
            return std::sqrt(parseval_factor * acc);
        }
        case NormKind::SpectralL1W:
        case NormKind::LinfProxy: {
            const double s = spec.order;
            return par::sum_indexed(n, [&](std::int64_t i) {
                const int r = static_cast<int>(i / cols), k = static_cast<int>(i % cols);
                return std::pow(1.0 + w2_of(r, k), 0.5 * s) * std::abs(c[static_cast<size_t>(i)]);
            });
        }
        case NormKind::AnisoL1x2L2x1: {
            const double s = spec.order;
            double acc = 0.0;
            for (int k = 0; k < cols; ++k) {
                double inner = 0.0;
                for (int r = 0; r < rows; ++r) {
                    const std::int64_t i = static_cast<std::int64_t>(r) * cols + k;
                    inner += std::pow(1.0 + w2_of(r, k), s) * std::norm(c[static_cast<size_t>(i)]);
                }
                acc += std::sqrt(inner);
            }
            return aniso_factor * acc;
        }
    }
    return 0.0;
}
}  // namespace

double norm(const TorusField& f, const NormSpec& spec) {
    if (spec.order < 0.0 || !std::isfinite(spec.order))
        throw ParameterError("norm: order must be finite and >= 0");
    const TorusGrid& g = f.grid;
    const int side = g.side();
    const double L = g.length;
    // row = n1 index, col = n2 index; x2-outer for the anisotropic norm
    return norm_square_lattice(
        f.c, side, side, spec,
        [&](int r, int k) { return torus_w2(g, r - g.modes, k - g.modes); }, L * L,
        std::sqrt(L));
}

namespace {
template <class Field>
double strip_norm_impl(const Field& f, const NormSpec& spec) {
    if (spec.order < 0.0 || !std::isfinite(spec.order))
        throw ParameterError("norm: order must be finite and >= 0");
    const StripGrid& g = f.grid;
    // rows are p, cols are q; the anisotropic norm sums q outermost
    return norm_square_lattice(
        f.c, g.prows(), g.qcols(), spec,
        [&](int r, int k) { return strip_w2(r - g.pmodes, k); }, 1.0, 1.0);
}
}  // namespace

double norm(const StripFieldX& f, const NormSpec& spec) { return strip_norm_impl(f, spec); }
double norm(const StripFieldY& f, const NormSpec& spec) { return strip_norm_impl(f, spec); }

double grid_max(const TorusField& f) {
    RealArray2 phys = torus_inverse(f);
    return kernels::max_abs(phys.v.data(), static_cast<std::int64_t>(phys.v.size()));
}

double grid_max(const StripFieldX& f) {
    RealArray2 phys = strip_inverse_x(f);
    return kernels::max_abs(phys.v.data(), static_cast<std::int64_t>(phys.v.size()));
}

TorusField riesz1(const TorusField& f) {
    TorusField out = f;
    const int K = f.grid.modes;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0) {
                out.at(n1, n2) = cplx{0.0, 0.0};
                continue;
            }
            const double mag = std::sqrt(static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2);
            out.at(n1, n2) *= cplx{0.0, -n1 / mag};
        }
    return out;
}

namespace {
template <class Field>
Field strip_riesz_impl(const Field& f) {
    Field out = f;
    const StripGrid& g = f.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q) {
            if (p == 0) {
                out.at(p, q) = cplx{0.0, 0.0};
                continue;
            }
            out.at(p, q) *= cplx{0.0, -2.0 * kPi * p / std::sqrt(strip_w2(p, q))};
        }
    return out;
}
}  // namespace

StripFieldX riesz1(const StripFieldX& f) { return strip_riesz_impl(f); }
StripFieldY riesz1(const StripFieldY& f) { return strip_riesz_impl(f); }

TorusVelocity biot_savart(const TorusField& theta) {
    TorusVelocity u{TorusField(theta.grid), TorusField(theta.grid)};
    const int K = theta.grid.modes;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            const cplx th = theta.at(n1, n2);
            u.u1.at(n1, n2) = -(static_cast<double>(n1) * n2 / nsq) * th;
            u.u2.at(n1, n2) = (static_cast<double>(n1) * n1 / nsq) * th;
        }
    u.u2.at(0, 0) = theta.at(0, 0);  // mean carried straight into u2
    u.u1.real_valued = theta.real_valued;
    u.u2.real_valued = theta.real_valued;
    return u;
}

StripVelocity biot_savart(const StripFieldX& theta) {
    StripVelocity u{StripFieldY(theta.grid), StripFieldX(theta.grid)};
    const StripGrid& g = theta.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p) {
        if (p == 0) continue;  // no p = 0 velocity content
        for (int q = 1; q <= g.qmodes; ++q) {
            const double D = strip_w2(p, q);
            const cplx th = theta.at(p, q);
            const double h = 2.0 * kPi * p;
            u.u2.at(p, q) = (h * h / D) * th;
            u.u1.at(p, q) = cplx{0.0, kPi * kPi * p * q / D} * th;
        }
    }
    u.u1.real_valued = theta.real_valued;
    u.u2.real_valued = theta.real_valued;
    return u;
}

double divergence_residual(const TorusVelocity& u) {
    const TorusGrid& g = u.u1.grid;
    const int K = g.modes;
    double worst = 0.0;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const cplx a = u.u1.at(n1, n2), b = u.u2.at(n1, n2);
            const double mag = std::max(std::abs(a), std::abs(b));
            if (mag == 0.0) continue;
            const double x1 = g.xi1(n1), x2 = g.xi2(n2);
            const double div = std::abs(x1 * a + x2 * b);
            worst = std::max(worst, div / (std::sqrt(x1 * x1 + x2 * x2) * mag));
        }
    return worst;
}

double divergence_residual(const StripVelocity& u) {
    const StripGrid& g = u.u2.grid;
    double worst = 0.0;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q) {
            // d1 u1 lands on C_{p,q} with 2 pi i p; d2 u2 lands there with +(pi/2) q
            const cplx a = u.u1.at(p, q);
            const cplx b = q <= g.qmodes ? u.u2.at(p, q) : cplx{0, 0};
            const double mag = std::max(std::abs(a), std::abs(b));
            if (mag == 0.0) continue;
            const cplx div = cplx{0.0, 2.0 * kPi * p} * a + 0.5 * kPi * q * b;
            const double scale = std::sqrt(strip_w2(p, q));
            if (scale == 0.0) continue;
            worst = std::max(worst, std::abs(div) / (scale * mag));
        }
    return worst;
}

TorusField derivative(const TorusField& f, int axis) {
    if (axis != 1 && axis != 2) throw ParameterError("derivative: axis must be 1 or 2");
    TorusField out = f;
    const int K = f.grid.modes;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            const double xi = axis == 1 ? f.grid.xi1(n1) : f.grid.xi2(n2);
            out.at(n1, n2) *= cplx{0.0, 2.0 * kPi * xi};
        }
    return out;
}

StripFieldX derivative1(const StripFieldX& f) {
    StripFieldX out = f;
    const StripGrid& g = f.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q) out.at(p, q) *= cplx{0.0, 2.0 * kPi * p};
    return out;
}

StripFieldY derivative1(const StripFieldY& f) {
    StripFieldY out{f.grid};
    const StripGrid& g = f.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q)
            out.at(p, q) = f.at(p, q) * cplx{0.0, 2.0 * kPi * p};
    out.real_valued = f.real_valued;
    return out;
}

StripFieldY derivative2(const StripFieldX& f) {
    StripFieldY out{f.grid};
    const StripGrid& g = f.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 1; q <= g.qmodes; ++q) out.at(p, q) = 0.5 * kPi * q * f.at(p, q);
    out.real_valued = f.real_valued;
    return out;
}

StripFieldX derivative2(const StripFieldY& f) {
    StripFieldX out{f.grid};
    const StripGrid& g = f.grid;
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 1; q <= g.qmodes; ++q) out.at(p, q) = -0.5 * kPi * q * f.at(p, q);
    out.real_valued = f.real_valued;
    return out;
}

double weighted_lp(const TorusField& f, double s, double p) {
    const TorusGrid& g = f.grid;
    const int side = g.side();
    const std::int64_t n = g.coeff_count();
    if (p > 1e9) {
        double m = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const int n1 = static_cast<int>(i / side) - g.modes;
            const int n2 = static_cast<int>(i % side) - g.modes;
            m = std::max(m, std::pow(1.0 + torus_w2(g, n1, n2), 0.5 * s) *
                                std::abs(f.c[static_cast<size_t>(i)]));
        }
        return m;
    }
    const double acc = par::sum_indexed(n, [&](std::int64_t i) {
        const int n1 = static_cast<int>(i / side) - g.modes;
        const int n2 = static_cast<int>(i % side) - g.modes;
        return std::pow(std::pow(1.0 + torus_w2(g, n1, n2), 0.5 * s) *
                            std::abs(f.c[static_cast<size_t>(i)]),
                        p);
    });
    return std::pow(acc, 1.0 / p);
}

ConvolutionCheck convolution_bound_check(const TorusField& f, const TorusField& g, double s,
                                         double p, double q, double r) {
    if (p < 1.0 || q < 1.0 || r < 1.0)
        throw ParameterError("convolution_bound_check: exponents must be >= 1");
    const double lhs_rel = 1.0 / q + 1.0 / r;
    const double rhs_rel = 1.0 + 1.0 / p;
    if (std::abs(lhs_rel - rhs_rel) > 1e-9)
        throw ParameterError("convolution_bound_check: need 1/q + 1/r = 1 + 1/p");
    TorusField fg = physical_product(f, g);
    ConvolutionCheck out;
    out.lhs = weighted_lp(fg, s, p);
    out.rhs = weighted_lp(f, s, q) * weighted_lp(g, s, r);
    out.ratio = out.rhs == 0.0 ? 0.0 : out.lhs / out.rhs;
    return out;
}

}  // namespace stratipm
