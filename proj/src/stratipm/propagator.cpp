#include "stratipm/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/kernels.hpp"
#include "stratipm/par.hpp"

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void DecayCurve::push(double tv, double ntv, double val) {
    if (!t.empty() && tv <= t.back())
        throw ParameterError("DecayCurve: times must be strictly increasing");
    if (val < 0.0) throw ParameterError("DecayCurve: negative value");
    t.push_back(tv);
    nt.push_back(ntv);
    value.push_back(val);
}

std::vector<double> damping_rates(const TorusGrid& g, double N) {
    if (N < 0.0) throw ParameterError("damping_rates: N must be >= 0");
    std::vector<double> lam(static_cast<size_t>(g.coeff_count()), 0.0);
    const int K = g.modes;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            lam[static_cast<size_t>(g.index(n1, n2))] =
                (n1 == 0 && n2 == 0) ? N : N * (static_cast<double>(n1) * n1) / nsq;
        }
    return lam;
}

std::vector<double> damping_rates(const StripGrid& g, double N) {
    if (N < 0.0) throw ParameterError("damping_rates: N must be >= 0");
    std::vector<double> lam(static_cast<size_t>(g.coeff_count()), 0.0);
    for (int p = -g.pmodes; p <= g.pmodes; ++p)
        for (int q = 0; q <= g.qmodes; ++q) {
            if (p == 0) continue;  // fixed points of the semigroup
            const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
            lam[static_cast<size_t>(g.index(p, q))] = N * h * h / (h * h + v * v);
        }
    return lam;
}

namespace {
template <class Field, class Grid>
Field apply_rates(const Field& f, const Grid& g, double N, double t) {
    if (t < 0.0) throw ParameterError("semigroup_apply: t must be >= 0");
    const std::vector<double> lam = damping_rates(g, N);
    Field out = f;
    const std::int64_t n = static_cast<std::int64_t>(out.c.size());
    par::for_indexed(n, [&](std::int64_t i) {
        out.c[static_cast<size_t>(i)] *= std::exp(-lam[static_cast<size_t>(i)] * t);
    });
    return out;
}
}  // namespace

TorusField semigroup_apply(const TorusField& f, double N, double t) {
    return apply_rates(f, f.grid, N, t);
}

StripFieldX semigroup_apply(const StripFieldX& f, double N, double t) {
    return apply_rates(f, f.grid, N, t);
}

TorusField duhamel_source_apply(const TorusField& source, double N, double t_elapsed) {
    return semigroup_apply(source, N, t_elapsed);
}

StripFieldX duhamel_source_apply(const StripFieldX& source, double N, double t_elapsed) {
    return semigroup_apply(source, N, t_elapsed);
}

std::function<double(double, double)> sharpness_witness(const WitnessSpec& spec) {
    if (spec.eps <= 0.0) throw ParameterError("sharpness_witness: eps must be > 0");
    if (spec.s < 1.0) throw ParameterError("sharpness_witness: s must be >= 1");
    if (spec.j < 0) throw ParameterError("sharpness_witness: j must be >= 0");
    const double a = -0.5 + 2.0 * spec.eps;
    const double b = -(0.5 * spec.s + 0.25 + 2.0 * spec.eps);
    return [a, b](double x1, double x2) {
        if (x1 == 0.0) return 0.0;  // integrable singularity, axis-avoiding nodes
        return std::pow(std::abs(x1), a) * std::pow(1.0 + x1 * x1 + x2 * x2, b);
    };
}

PlaneSemigroupSweep::PlaneSemigroupSweep(const std::function<double(double, double)>& density,
                                         const PlaneQuadrature& quad, PlaneNormKind kind, int j)
    : kind_(kind), j_(j) {
    const auto& x = quad.half_nodes();
    const auto& w = quad.half_weights();
    const size_t n = x.size();
    w_.resize(n * n);
    ratio_.resize(n * n);
    dens_.resize(n * n);
    par::for_indexed(static_cast<std::int64_t>(n * n), [&](std::int64_t idx) {
        const size_t i = static_cast<size_t>(idx) / n, jj = static_cast<size_t>(idx) % n;
        const double x1 = x[i], x2 = x[jj];
        const double r = x1 * x1 / (x1 * x1 + x2 * x2);
        double d;
        if (kind_ == PlaneNormKind::L2) {
            auto sq = [](double v) { return v * v; };
            d = sq(density(x1, x2)) + sq(density(-x1, x2)) + sq(density(x1, -x2)) +
                sq(density(-x1, -x2));
            d *= std::pow(r, j_);
        } else {
            d = std::abs(density(x1, x2)) + std::abs(density(-x1, x2)) +
                std::abs(density(x1, -x2)) + std::abs(density(-x1, -x2));
            if (kind_ == PlaneNormKind::L1Weighted || j_ > 0) d *= std::pow(r, 0.5 * j_);
        }
        w_[static_cast<size_t>(idx)] = w[i] * w[jj];
        ratio_[static_cast<size_t>(idx)] = r;
        dens_[static_cast<size_t>(idx)] = d;
    });
}

double PlaneSemigroupSweep::value(double N, double t) const {
    if (t < 0.0) throw ParameterError("plane sweep: t must be >= 0");
    const double c = kind_ == PlaneNormKind::L2 ? 2.0 : 1.0;
    const double acc =
        par::sum_indexed(static_cast<std::int64_t>(w_.size()), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            return w_[k] * std::exp(-c * N * ratio_[k] * t) * dens_[k];
        });
    return kind_ == PlaneNormKind::L2 ? std::sqrt(acc) : acc;
}

DecayCurve PlaneSemigroupSweep::curve(double N, const std::vector<double>& times) const {
    DecayCurve out;
    for (double t : times) out.push(t, N * t, value(N, t));
    return out;
}

double plane_norm_quadrature(const std::function<double(double, double)>& density, double N,
                             double t, PlaneNormKind kind, int j, const PlaneQuadrature& quad,
                             double truncation_tol) {
    PlaneSemigroupSweep base(density, quad, kind, j);
    PlaneSemigroupSweep wide(density, quad.widened(), kind, j);
    const double v1 = base.value(N, t);
    const double v2 = wide.value(N, t);
    const double rel = std::abs(v2 - v1) / std::max(std::abs(v2), 1e-300);
    if (rel > truncation_tol)
        throw RefinementError("plane_norm_quadrature: truncation not converged "
                              "(doubling xi_max moved the value)", rel);
    return v2;
}

double plane_hs_norm(const std::function<double(double, double)>& density, double s,
                     const PlaneQuadrature& quad) {
    const double acc = quad.integrate([&](double x1, double x2) {
        const double f = density(x1, x2);
        return std::pow(1.0 + x1 * x1 + x2 * x2, s) * f * f;
    });
    return std::sqrt(acc);
}

DecayCurve kernel_decay_ratio(const std::function<double(double, double)>& density, double N,
                              const std::vector<double>& times, double s,
                              const PlaneQuadrature& quad) {
    if (s <= 1.0) throw ParameterError("kernel_decay_ratio: s must be > 1");
    const double hs = plane_hs_norm(density, s, quad);
    PlaneSemigroupSweep sweep(density, quad, PlaneNormKind::L1, 0);
    DecayCurve out;
    for (double t : times)
        out.push(t, N * t, std::pow(1.0 + N * t, 0.25) * sweep.value(N, t) / hs);
    return out;
}

namespace {
// One pass per time over the lattice, accumulating the whole H^s ladder.
// Row-blocked accumulation keeps the reduction order fixed for any thread
// count.
struct SweepAccum {
    int m;
    std::vector<double> rows;  // nrows x (3(m+1) + 1)
    int width() const { return 3 * (m + 1) + 1; }
};

std::map<std::string, DecayCurve> assemble_curves(
    const std::vector<double>& times, double N, int m,
    const std::vector<std::vector<double>>& per_time_sums, double mean_abs_sq, double l2factor) {
    std::map<std::string, DecayCurve> out;
    const int w = 3 * (m + 1) + 1;
    for (int s = 0; s <= m; ++s) {
        DecayCurve cth, cu, cu2;
        for (size_t it = 0; it < times.size(); ++it) {
            const double t = times[it], nt = N * t;
            const double e2 = std::exp(-2.0 * N * t) * mean_abs_sq;
            const auto& sums = per_time_sums[it];
            cth.push(t, nt, std::sqrt(l2factor * sums[static_cast<size_t>(s)]));
            // the mean mode contributes e^{-Nt} F theta(0) to u2 (and u)
            cu.push(t, nt, std::sqrt(l2factor * (sums[static_cast<size_t>(m + 1 + s)] + e2)));
            cu2.push(t, nt,
                     std::sqrt(l2factor * (sums[static_cast<size_t>(2 * (m + 1) + s)] + e2)));
        }
        out["theta_bar_H" + std::to_string(s)] = std::move(cth);
        out["u_H" + std::to_string(s)] = std::move(cu);
        out["u2_H" + std::to_string(s)] = std::move(cu2);
    }
    DecayCurve g;
    for (size_t it = 0; it < times.size(); ++it)
        g.push(times[it], N * times[it],
               std::sqrt(l2factor * per_time_sums[it][static_cast<size_t>(w - 1)]));
    out["grad_u2_Hm1"] = std::move(g);
    return out;
}
}  // namespace

std::map<std::string, DecayCurve> semigroup_norm_sweep(const TorusField& theta0, double N,
                                                       const std::vector<double>& times, int m) {
    const TorusGrid& g = theta0.grid;
    const int K = g.modes;
    const int side = g.side();
    const int w = 3 * (m + 1) + 1;
    std::vector<std::vector<double>> per_time(times.size());
    std::vector<double> rowsum(static_cast<size_t>(side) * w);

    for (size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        std::fill(rowsum.begin(), rowsum.end(), 0.0);
        par::for_indexed(side, [&](std::int64_t row) {
            const int n1 = static_cast<int>(row) - K;
            double* acc = rowsum.data() + row * w;
            if (n1 == 0) return;  // theta_bar, u, u2 all exclude the p=0 column here
            for (int n2 = -K; n2 <= K; ++n2) {
                const double a2 = std::norm(theta0.at(n1, n2));
                if (a2 == 0.0) continue;
                const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
                const double r = static_cast<double>(n1) * n1 / nsq;
                const double e = std::exp(-2.0 * N * r * t) * a2;
                const double x1 = g.xi1(n1), x2 = g.xi2(n2);
                const double w2 = x1 * x1 + x2 * x2;
                double pw = 1.0;
                for (int s = 0; s <= m; ++s) {
                    acc[s] += pw * e;
                    acc[m + 1 + s] += pw * r * e;
                    acc[2 * (m + 1) + s] += pw * r * r * e;
                    pw *= (1.0 + w2);
                }
                // pw is now (1+w2)^{m+1}; grad u2 in H^{m-1}
                const double wm1 = std::pow(1.0 + w2, m - 1);
                acc[w - 1] += wm1 * (4.0 * kPi * kPi * w2) * r * r * e;
            }
        });
        std::vector<double> total(static_cast<size_t>(w), 0.0);
        for (int row = 0; row < side; ++row)
            for (int kk = 0; kk < w; ++kk) total[static_cast<size_t>(kk)] += rowsum[static_cast<size_t>(row) * w + kk];
        per_time[it] = std::move(total);
    }
    const double mean2 = std::norm(theta0.at(0, 0));
    return assemble_curves(times, N, m, per_time, mean2, g.length * g.length);
}

std::map<std::string, DecayCurve> semigroup_norm_sweep(const StripFieldX& theta0, double N,
                                                       const std::vector<double>& times, int m) {
    const StripGrid& g = theta0.grid;
    const int w = 3 * (m + 1) + 1;
    const int prows = g.prows();
    std::vector<std::vector<double>> per_time(times.size());
    std::vector<double> rowsum(static_cast<size_t>(prows) * w);

    for (size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        std::fill(rowsum.begin(), rowsum.end(), 0.0);
        par::for_indexed(prows, [&](std::int64_t row) {
            const int p = static_cast<int>(row) - g.pmodes;
            if (p == 0) return;
            double* acc = rowsum.data() + row * w;
            for (int q = 1; q <= g.qmodes; ++q) {
                const double a2 = std::norm(theta0.at(p, q));
                if (a2 == 0.0) continue;
                const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
                const double D = h * h + v * v;
                const double r = h * h / D;
                const double e = std::exp(-2.0 * N * r * t) * a2;
                double pw = 1.0;
                for (int s = 0; s <= m; ++s) {
                    acc[s] += pw * e;
                    acc[m + 1 + s] += pw * r * e;
                    acc[2 * (m + 1) + s] += pw * r * r * e;
                    pw *= (1.0 + D);
                }
                acc[w - 1] += std::pow(1.0 + D, m - 1) * D * r * r * e;
            }
        });
        std::vector<double> total(static_cast<size_t>(w), 0.0);
        for (int row = 0; row < prows; ++row)
            for (int kk = 0; kk < w; ++kk) total[static_cast<size_t>(kk)] += rowsum[static_cast<size_t>(row) * w + kk];
        per_time[it] = std::move(total);
    }
    // the strip density has no (0,0) mode; nothing decays like e^{-Nt}
    return assemble_curves(times, N, m, per_time, 0.0, 1.0);
}

}  // namespace stratipm
