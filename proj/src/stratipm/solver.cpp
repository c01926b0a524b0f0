#include "stratipm/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/kernels.hpp"
#include "stratipm/operators.hpp"
#include "stratipm/par.hpp"
#include "stratipm/propagator.hpp"

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTimeEps = 1e-12;
constexpr double kBlowupFactor = 1e3;
}  // namespace

void SolverConfig::validate() const {
    // N = 0 admitted for the pure-transport limit
    if (N < 0.0) throw ParameterError("SolverConfig: N must be >= 0");
    if (m < 1) throw ParameterError("SolverConfig: m must be >= 1");
    if (final_time < 0.0) throw ParameterError("SolverConfig: final_time must be >= 0");
    if (dt_policy == DtPolicy::Fixed && dt <= 0.0)
        throw ParameterError("SolverConfig: fixed dt must be > 0");
    if (dt_max <= 0.0) throw ParameterError("SolverConfig: dt_max must be > 0");
    if (cfl_safety <= 0.0 || cfl_safety > 1.0)
        throw ParameterError("SolverConfig: cfl_safety must be in (0, 1]");
    if (sigma.kind != ProfileKind::Zero && domain != Domain::PlaneBox)
        throw ConfigError("SolverConfig: sigma is only supported on plane_box");
    if (domain == Domain::Strip) {
        if (pmodes < 1 || qmodes < 1)
            throw ParameterError("SolverConfig: strip needs pmodes, qmodes >= 1");
    } else {
        if (modes < 1) throw ParameterError("SolverConfig: modes must be >= 1");
        if (domain == Domain::PlaneBox && box_length <= 0.0)
            throw ParameterError("SolverConfig: box_length must be > 0");
    }
    if (snapshot_dt < 0.0) throw ParameterError("SolverConfig: snapshot_dt must be >= 0");
}

double phi1_stable(double z) {
    if (std::abs(z) >= 0.7) return (std::exp(z) - 1.0) / z;
    // sum_k z^k / (k+1)!
    double acc = 0.0;
    for (int k = 17; k >= 0; --k) {
        double fact = 1.0;
        for (int i = 2; i <= k + 1; ++i) fact *= i;
        acc = acc * z + 1.0 / fact;
    }
    return acc;
}

namespace {
struct PhiTables {
    std::array<double, 24> f1{}, f2{}, f3{};
    PhiTables() {
        auto fact = [](int k) {
            double v = 1.0;
            for (int i = 2; i <= k; ++i) v *= i;
            return v;
        };
        for (int k = 0; k < 24; ++k) {
            const int n = k + 3;
            f1[static_cast<size_t>(k)] = 4.0 / fact(n) - 3.0 / fact(n - 1) + 1.0 / fact(n - 2);
            f2[static_cast<size_t>(k)] = -2.0 / fact(n) + 1.0 / fact(n - 1);
            f3[static_cast<size_t>(k)] = 4.0 / fact(n) - 1.0 / fact(n - 1);
        }
    }
};

const PhiTables& phi_tables() {
    static const PhiTables t;
    return t;
}

double horner(const std::array<double, 24>& c, double z) {
    double acc = 0.0;
    for (int k = 23; k >= 0; --k) acc = acc * z + c[static_cast<size_t>(k)];
    return acc;
}
}  // namespace

void Etdrk4Coeffs::compute(const std::vector<double>& lambda, double h) {
    const size_t n = lambda.size();
    E.resize(n);
    E2.resize(n);
    Q.resize(n);
    F1.resize(n);
    F2.resize(n);
    F3.resize(n);
    const PhiTables& tab = phi_tables();
    par::for_indexed(static_cast<std::int64_t>(n), [&](std::int64_t i) {
        const size_t k = static_cast<size_t>(i);
        const double z = -lambda[k] * h;
        E[k] = std::exp(z);
        E2[k] = std::exp(0.5 * z);
        Q[k] = 0.5 * h * phi1_stable(0.5 * z);
        if (std::abs(z) < 0.7) {
            F1[k] = h * horner(tab.f1, z);
            F2[k] = h * horner(tab.f2, z);
            F3[k] = h * horner(tab.f3, z);
        } else {
            const double z3 = z * z * z, ez = E[k];
            F1[k] = h * (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            F2[k] = h * (2.0 + z + ez * (-2.0 + z)) / z3;
            F3[k] = h * (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
    });
}

double cfl_dt(double u1_sup, double u2_sup, double dx, double dy, double safety, double dt_max) {
    double dt = dt_max;
    if (u1_sup > 0.0) dt = std::min(dt, safety * dx / u1_sup);
    if (u2_sup > 0.0) dt = std::min(dt, safety * dy / u2_sup);
    return dt;
}

namespace {

struct NlDiag {
    double u1_sup = 0.0;
    double u2_sup = 0.0;
    std::vector<cplx> flux_col;  // the n1 = 0 column of (u.grad theta + N u2)
};

// ---------- torus / plane box ----------

class TorusModel {
  public:
    TorusModel(const SolverConfig& cfg)
        : cfg_(cfg),
          grid_(cfg.modes, cfg.phys,
                cfg.domain == Domain::PlaneBox ? cfg.box_length : 1.0),
          work_(cfg.dealias ? padded_grid(grid_) : grid_),
          padded_(work_),
          theta_(grid_) {
        lambda_ = damping_rates(grid_, cfg.N);
        if (cfg.sigma.kind != ProfileKind::Zero) {
            sigma_work_.resize(static_cast<size_t>(work_.phys));
            for (int j = 0; j < work_.phys; ++j)
                sigma_work_[static_cast<size_t>(j)] =
                    profile_value(cfg.sigma, grid_.length * j / work_.phys, grid_.length);
        }
    }

    const TorusGrid& grid() const { return grid_; }
    const std::vector<double>& lambda() const { return lambda_; }
    size_t col_size() const { return static_cast<size_t>(grid_.side()); }
    double dx() const { return grid_.length / work_.phys; }
    double dy() const { return dx(); }

    std::vector<cplx> initial() const {
        return make_initial_torus(grid_, cfg_.init).c;
    }

    void nonlinear(const std::vector<cplx>& cin, std::vector<cplx>& out, NlDiag* diag) {
        theta_.c = cin;
        TorusVelocity u = biot_savart(theta_);
        TorusField th1 = derivative(theta_, 1);
        TorusField th2 = derivative(theta_, 2);
        RealArray2 pu1 = padded_.evaluate(u.u1);
        RealArray2 pu2 = padded_.evaluate(u.u2);
        RealArray2 pt1 = padded_.evaluate(th1);
        RealArray2 pt2 = padded_.evaluate(th2);
        RealArray2 w(pu1.n0, pu1.n1);
        const bool with_sigma = !sigma_work_.empty();
        const int cols = pu1.n1;
        par::for_indexed(static_cast<std::int64_t>(w.v.size()), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            double val = -(pu1.v[k] * pt1.v[k] + pu2.v[k] * pt2.v[k]);
            if (with_sigma) val -= pu2.v[k] * sigma_work_[static_cast<size_t>(i % cols)];
            w.v[k] = val;
        });
        out = padded_.forward_truncated(w, grid_).c;
        if (diag) {
            diag->u1_sup = kernels::max_abs(pu1.v.data(), static_cast<std::int64_t>(pu1.v.size()));
            diag->u2_sup = kernels::max_abs(pu2.v.data(), static_cast<std::int64_t>(pu2.v.size()));
            fill_flux(cin, &out, diag);
        }
    }

    // flux column of (u.grad theta + N u2) at n1 = 0; for linear-only runs
    // only the mean mode contributes.
    void fill_flux(const std::vector<cplx>& cin, const std::vector<cplx>* nl, NlDiag* diag) const {
        const int K = grid_.modes;
        diag->flux_col.assign(col_size(), cplx{0.0, 0.0});
        if (nl && sigma_work_.empty()) {
            for (int n2 = -K; n2 <= K; ++n2)
                diag->flux_col[static_cast<size_t>(n2 + K)] =
                    -(*nl)[static_cast<size_t>(grid_.index(0, n2))];
        }
        diag->flux_col[static_cast<size_t>(K)] +=
            cfg_.N * cin[static_cast<size_t>(grid_.index(0, 0))];
    }

    double theta_hm(const std::vector<cplx>& c) const {
        return weighted_norm(c, cfg_.m, /*exclude_p0=*/false, /*ratio_pow=*/0);
    }

    std::pair<double, double> ledger_integrands(const std::vector<cplx>& c) const {
        const double r1 = weighted_norm(c, cfg_.m, false, 1);
        // || (1+w2)^{1/2} F u2 ||_{l1}
        const int K = grid_.modes;
        const int side = grid_.side();
        double l1 = par::sum_indexed(grid_.coeff_count(), [&](std::int64_t i) {
            const int n1 = static_cast<int>(i / side) - K;
            const int n2 = static_cast<int>(i % side) - K;
            if (n1 == 0 && n2 == 0) return std::abs(c[static_cast<size_t>(i)]);
            if (n1 == 0) return 0.0;
            const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            const double r = static_cast<double>(n1) * n1 / nsq;
            const double x1 = grid_.xi1(n1), x2 = grid_.xi2(n2);
            return std::sqrt(1.0 + x1 * x1 + x2 * x2) * r * std::abs(c[static_cast<size_t>(i)]);
        });
        return {r1 * r1, l1};
    }

    std::vector<cplx> mean_col(const std::vector<cplx>& c) const {
        const int K = grid_.modes;
        std::vector<cplx> col(col_size());
        for (int n2 = -K; n2 <= K; ++n2)
            col[static_cast<size_t>(n2 + K)] = c[static_cast<size_t>(grid_.index(0, n2))];
        return col;
    }

    void fill_snapshot(const std::vector<cplx>& c, Snapshot& s) {
        const int m = cfg_.m;
        const int K = grid_.modes;
        const int side = grid_.side();
        const double L2 = grid_.length * grid_.length;
        s.theta_bar_hs.assign(static_cast<size_t>(m + 1), 0.0);
        s.u_hs.assign(static_cast<size_t>(m + 1), 0.0);
        s.u2_hs.assign(static_cast<size_t>(m + 1), 0.0);
        std::vector<double> acc(static_cast<size_t>(3 * (m + 1) + 1), 0.0);
        double theta_full_hm = 0.0, u2l1 = 0.0, u2_mean_abs = 0.0;
        for (int n1 = -K; n1 <= K; ++n1)
            for (int n2 = -K; n2 <= K; ++n2) {
                const double a2 = std::norm(c[static_cast<size_t>(grid_.index(n1, n2))]);
                const double x1 = grid_.xi1(n1), x2 = grid_.xi2(n2);
                const double w2 = x1 * x1 + x2 * x2;
                theta_full_hm += std::pow(1.0 + w2, m) * a2;
                if (n1 == 0) continue;
                const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
                const double r = static_cast<double>(n1) * n1 / nsq;
                double pw = 1.0;
                for (int sdeg = 0; sdeg <= m; ++sdeg) {
                    acc[static_cast<size_t>(sdeg)] += pw * a2;
                    acc[static_cast<size_t>(m + 1 + sdeg)] += pw * r * a2;
                    acc[static_cast<size_t>(2 * (m + 1) + sdeg)] += pw * r * r * a2;
                    pw *= 1.0 + w2;
                }
                acc[static_cast<size_t>(3 * (m + 1))] +=
                    std::pow(1.0 + w2, m - 1) * 4.0 * kPi * kPi * w2 * r * r * a2;
                u2l1 += std::sqrt(1.0 + w2) * r *
                        std::abs(c[static_cast<size_t>(grid_.index(n1, n2))]);
            }
        const double mean2 = std::norm(c[static_cast<size_t>(grid_.index(0, 0))]);
        for (int sdeg = 0; sdeg <= m; ++sdeg) {
            s.theta_bar_hs[static_cast<size_t>(sdeg)] =
                std::sqrt(L2 * acc[static_cast<size_t>(sdeg)]);
            s.u_hs[static_cast<size_t>(sdeg)] =
                std::sqrt(L2 * (acc[static_cast<size_t>(m + 1 + sdeg)] + mean2));
            s.u2_hs[static_cast<size_t>(sdeg)] =
                std::sqrt(L2 * (acc[static_cast<size_t>(2 * (m + 1) + sdeg)] + mean2));
        }
        s.grad_u2_hm1 = std::sqrt(L2 * acc[static_cast<size_t>(3 * (m + 1))]);
        s.theta_hm = std::sqrt(L2 * theta_full_hm);
        s.r1_theta_hm = std::sqrt(L2 * acc[static_cast<size_t>(2 * m + 1)]);
        s.u2_l1w = u2l1 + std::sqrt(mean2);
        s.theta_mean = L2 * c[static_cast<size_t>(grid_.index(0, 0))];
        s.u1_mean_abs = 0.0;   // u1 carries no n1 = 0 content by construction
        s.u2_mean_abs = u2_mean_abs;  // likewise zero away from the mean
        s.mean_col = mean_col(c);
        theta_.c = c;
        TorusVelocity u = biot_savart(theta_);
        RealArray2 pth = padded_.evaluate(theta_);
        RealArray2 pu1 = padded_.evaluate(u.u1);
        RealArray2 pu2 = padded_.evaluate(u.u2);
        s.theta_sup = kernels::max_abs(pth.v.data(), static_cast<std::int64_t>(pth.v.size()));
        s.u1_sup = kernels::max_abs(pu1.v.data(), static_cast<std::int64_t>(pu1.v.size()));
        s.u2_sup = kernels::max_abs(pu2.v.data(), static_cast<std::int64_t>(pu2.v.size()));
        s.boundary_trace = 0.0;
    }

  private:
    // sqrt( L^2 sum (1+w2)^ord (n1^2/|n|^2)^{ratio_pow} |c|^2 ), optional p0 cut
    double weighted_norm(const std::vector<cplx>& c, int ord, bool exclude_p0,
                         int ratio_pow) const {
        const int K = grid_.modes;
        const int side = grid_.side();
        const double acc = par::sum_indexed(grid_.coeff_count(), [&](std::int64_t i) {
            const int n1 = static_cast<int>(i / side) - K;
            const int n2 = static_cast<int>(i % side) - K;
            if (n1 == 0 && (exclude_p0 || ratio_pow > 0)) return 0.0;
            const double x1 = grid_.xi1(n1), x2 = grid_.xi2(n2);
            double v = std::pow(1.0 + x1 * x1 + x2 * x2, ord) *
                       std::norm(c[static_cast<size_t>(i)]);
            if (ratio_pow > 0) {
                const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
                v *= std::pow(static_cast<double>(n1) * n1 / nsq, ratio_pow);
            }
            return v;
        });
        return std::sqrt(grid_.length * grid_.length * acc);
    }

    SolverConfig cfg_;
    TorusGrid grid_;
    TorusGrid work_;
    TorusTransformer padded_;
    TorusField theta_;
    std::vector<double> lambda_;
    std::vector<double> sigma_work_;
};

// ---------- strip ----------

class StripModel {
  public:
    StripModel(const SolverConfig& cfg)
        : cfg_(cfg),
          grid_(cfg.pmodes, cfg.qmodes),
          work_(cfg.dealias ? padded_grid(grid_) : grid_),
          padded_(work_),
          theta_(grid_) {
        lambda_ = damping_rates(grid_, cfg.N);
        bint_.assign(static_cast<size_t>(grid_.qcols()), 0.0);
        for (int q = 1; q <= grid_.qmodes; q += 2)
            bint_[static_cast<size_t>(q)] = 4.0 / (kPi * q) * std::sin(0.5 * kPi * q);
    }

    const StripGrid& grid() const { return grid_; }
    const std::vector<double>& lambda() const { return lambda_; }
    size_t col_size() const { return static_cast<size_t>(grid_.qcols()); }
    double dx() const { return 1.0 / work_.phys_x; }
    double dy() const { return 2.0 / work_.vsegments; }

    std::vector<cplx> initial() const { return make_initial_strip(grid_, cfg_.init).c; }

    void nonlinear(const std::vector<cplx>& cin, std::vector<cplx>& out, NlDiag* diag) {
        theta_.c = cin;
        StripVelocity u = biot_savart(theta_);
        StripFieldX t1 = derivative1(theta_);
        StripFieldY t2 = derivative2(theta_);
        RealArray2 pu1 = padded_.evaluate_y(u.u1);
        RealArray2 pu2 = padded_.evaluate_x(u.u2);
        RealArray2 pt1 = padded_.evaluate_x(t1);
        RealArray2 pt2 = padded_.evaluate_y(t2);
        RealArray2 w(pu1.n0, pu1.n1);
        par::for_indexed(static_cast<std::int64_t>(w.v.size()), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            w.v[k] = -(pu1.v[k] * pt1.v[k] + pu2.v[k] * pt2.v[k]);
        });
        StripFieldX nl = padded_.forward_x(w, false);
        out.assign(static_cast<size_t>(grid_.coeff_count()), cplx{0.0, 0.0});
        for (int p = -grid_.pmodes; p <= grid_.pmodes; ++p)
            for (int q = 1; q <= grid_.qmodes; ++q)
                out[static_cast<size_t>(grid_.index(p, q))] = nl.at(p, q);
        if (diag) {
            diag->u1_sup = kernels::max_abs(pu1.v.data(), static_cast<std::int64_t>(pu1.v.size()));
            diag->u2_sup = kernels::max_abs(pu2.v.data(), static_cast<std::int64_t>(pu2.v.size()));
            fill_flux(cin, &out, diag);
        }
    }

    void fill_flux(const std::vector<cplx>& /*cin*/, const std::vector<cplx>* nl,
                   NlDiag* diag) const {
        diag->flux_col.assign(col_size(), cplx{0.0, 0.0});
        if (nl) {
            // u2 has no p = 0 content, so the flux is purely advective
            for (int q = 0; q <= grid_.qmodes; ++q)
                diag->flux_col[static_cast<size_t>(q)] =
                    -(*nl)[static_cast<size_t>(grid_.index(0, q))];
        }
    }

    double theta_hm(const std::vector<cplx>& c) const {
        return weighted_norm(c, cfg_.m, false, 0);
    }

    std::pair<double, double> ledger_integrands(const std::vector<cplx>& c) const {
        const double r1 = weighted_norm(c, cfg_.m, false, 1);
        const int qcols = grid_.qcols();
        double l1 = par::sum_indexed(grid_.coeff_count(), [&](std::int64_t i) {
            const int p = static_cast<int>(i / qcols) - grid_.pmodes;
            const int q = static_cast<int>(i % qcols);
            if (p == 0) return 0.0;
            const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
            const double D = h * h + v * v;
            return std::sqrt(1.0 + D) * (h * h / D) * std::abs(c[static_cast<size_t>(i)]);
        });
        return {r1 * r1, l1};
    }

    std::vector<cplx> mean_col(const std::vector<cplx>& c) const {
        std::vector<cplx> col(col_size());
        for (int q = 0; q <= grid_.qmodes; ++q)
            col[static_cast<size_t>(q)] = c[static_cast<size_t>(grid_.index(0, q))];
        return col;
    }

    void fill_snapshot(const std::vector<cplx>& c, Snapshot& s) {
        const int m = cfg_.m;
        s.theta_bar_hs.assign(static_cast<size_t>(m + 1), 0.0);
        s.u_hs.assign(static_cast<size_t>(m + 1), 0.0);
        s.u2_hs.assign(static_cast<size_t>(m + 1), 0.0);
        std::vector<double> acc(static_cast<size_t>(3 * (m + 1) + 1), 0.0);
        double theta_full_hm = 0.0, u2l1 = 0.0;
        for (int p = -grid_.pmodes; p <= grid_.pmodes; ++p)
            for (int q = 0; q <= grid_.qmodes; ++q) {
                const double a2 = std::norm(c[static_cast<size_t>(grid_.index(p, q))]);
                const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
                const double D = h * h + v * v;
                theta_full_hm += std::pow(1.0 + D, m) * a2;
                if (p == 0) continue;
                const double r = h * h / D;
                double pw = 1.0;
                for (int sdeg = 0; sdeg <= m; ++sdeg) {
                    acc[static_cast<size_t>(sdeg)] += pw * a2;
                    acc[static_cast<size_t>(m + 1 + sdeg)] += pw * r * a2;
                    acc[static_cast<size_t>(2 * (m + 1) + sdeg)] += pw * r * r * a2;
                    pw *= 1.0 + D;
                }
                acc[static_cast<size_t>(3 * (m + 1))] +=
                    std::pow(1.0 + D, m - 1) * D * r * r * a2;
                u2l1 += std::sqrt(1.0 + D) * r *
                        std::abs(c[static_cast<size_t>(grid_.index(p, q))]);
            }
        for (int sdeg = 0; sdeg <= m; ++sdeg) {
            s.theta_bar_hs[static_cast<size_t>(sdeg)] = std::sqrt(acc[static_cast<size_t>(sdeg)]);
            s.u_hs[static_cast<size_t>(sdeg)] =
                std::sqrt(acc[static_cast<size_t>(m + 1 + sdeg)]);
            s.u2_hs[static_cast<size_t>(sdeg)] =
                std::sqrt(acc[static_cast<size_t>(2 * (m + 1) + sdeg)]);
        }
        s.grad_u2_hm1 = std::sqrt(acc[static_cast<size_t>(3 * (m + 1))]);
        s.theta_hm = std::sqrt(theta_full_hm);
        s.r1_theta_hm = std::sqrt(acc[static_cast<size_t>(2 * m + 1)]);
        s.u2_l1w = u2l1;
        // integral over Omega: only p = 0, odd q modes carry mass
        cplx mean{0.0, 0.0};
        for (int q = 1; q <= grid_.qmodes; q += 2)
            mean += c[static_cast<size_t>(grid_.index(0, q))] * bint_[static_cast<size_t>(q)];
        s.theta_mean = mean;
        s.mean_col = mean_col(c);
        theta_.c = c;
        StripVelocity u = biot_savart(theta_);
        double u1m = 0.0, u2m = 0.0;
        for (int q = 0; q <= grid_.qmodes; ++q) {
            u1m = std::max(u1m, std::abs(u.u1.at(0, q)));
            u2m = std::max(u2m, std::abs(u.u2.at(0, q)));
        }
        s.u1_mean_abs = u1m;
        s.u2_mean_abs = u2m;
        RealArray2 pth = padded_.evaluate_x(theta_);
        RealArray2 pu1 = padded_.evaluate_y(u.u1);
        RealArray2 pu2 = padded_.evaluate_x(u.u2);
        s.theta_sup = kernels::max_abs(pth.v.data(), static_cast<std::int64_t>(pth.v.size()));
        s.u1_sup = kernels::max_abs(pu1.v.data(), static_cast<std::int64_t>(pu1.v.size()));
        s.u2_sup = kernels::max_abs(pu2.v.data(), static_cast<std::int64_t>(pu2.v.size()));
        double bt = 0.0;
        for (int i = 0; i < pu2.n1; ++i) {
            bt = std::max(bt, std::abs(pu2.at(0, i)));
            bt = std::max(bt, std::abs(pu2.at(pu2.n0 - 1, i)));
            bt = std::max(bt, std::abs(pth.at(0, i)));
            bt = std::max(bt, std::abs(pth.at(pth.n0 - 1, i)));
        }
        s.boundary_trace = bt;
    }

  private:
    double weighted_norm(const std::vector<cplx>& c, int ord, bool exclude_p0,
                         int ratio_pow) const {
        const int qcols = grid_.qcols();
        const double acc = par::sum_indexed(grid_.coeff_count(), [&](std::int64_t i) {
            const int p = static_cast<int>(i / qcols) - grid_.pmodes;
            const int q = static_cast<int>(i % qcols);
            if (p == 0 && (exclude_p0 || ratio_pow > 0)) return 0.0;
            const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
            const double D = h * h + v * v;
            double val = std::pow(1.0 + D, ord) * std::norm(c[static_cast<size_t>(i)]);
            if (ratio_pow > 0) val *= std::pow(h * h / D, ratio_pow);
            return val;
        });
        return std::sqrt(acc);
    }

    SolverConfig cfg_;
    StripGrid grid_;
    StripGrid work_;
    StripTransformer padded_;
    StripFieldX theta_;
    std::vector<double> lambda_;
    std::vector<double> bint_;
};

// ---------- generic ETDRK4 loop ----------

template <class Model>
Trajectory run_impl(Model& model, const SolverConfig& cfg) {
    Trajectory traj;
    traj.config = cfg;

    std::vector<cplx> c = model.initial();
    traj.theta0_hm = model.theta_hm(c);
    traj.theta0_mean_col = model.mean_col(c);
    const double theta0_hm_sq = traj.theta0_hm * traj.theta0_hm;
    const double T = cfg.final_time;
    const double snap_dt = cfg.snapshot_dt > 0.0 ? cfg.snapshot_dt : std::max(T / 64.0, 1e-30);

    const size_t n = c.size();
    std::vector<cplx> nl(n), na(n), nb(n), nc(n), sa(n), sb(n), sc(n), cn(n);
    Etdrk4Coeffs co;
    double co_h = -1.0;

    EnergyLedger ledger;
    std::vector<cplx> flux_int(model.col_size(), cplx{0.0, 0.0});
    double prev_r1 = 0.0, prev_l1 = 0.0;
    std::vector<cplx> prev_flux;
    double pending_h = -1.0;
    NlDiag diag;

    double t = 0.0;
    double next_snap = 0.0;
    traj.status = RunStatus::Completed;
    traj.status_time = T;

    while (true) {
        if (cfg.nonlinear) {
            model.nonlinear(c, nl, &diag);
        } else {
            std::fill(nl.begin(), nl.end(), cplx{0.0, 0.0});
            model.fill_flux(c, nullptr, &diag);
            diag.u1_sup = diag.u2_sup = 0.0;
        }
        const auto [cur_r1, cur_l1] = model.ledger_integrands(c);
        if (pending_h > 0.0) {
            ledger.int_r1_hm_sq += 0.5 * pending_h * (prev_r1 + cur_r1);
            ledger.int_u2_l1w += 0.5 * pending_h * (prev_l1 + cur_l1);
            for (size_t k = 0; k < flux_int.size(); ++k)
                flux_int[k] += 0.5 * pending_h * (prev_flux[k] + diag.flux_col[k]);
        }
        const double thm = model.theta_hm(c);
        ledger.sup_theta_hm_sq = std::max(ledger.sup_theta_hm_sq, thm * thm);
        if (!traj.ledger_flagged && ledger.violates(cfg.N, theta0_hm_sq)) {
            traj.ledger_flagged = true;
            traj.ledger_violation_time = t;
        }
        if (!std::isfinite(thm) || thm > kBlowupFactor * traj.theta0_hm) {
            traj.status = RunStatus::BlowUp;
            traj.status_time = t;
            break;
        }

        if (t >= next_snap - kTimeEps) {
            Snapshot s;
            s.t = t;
            s.nt = cfg.N * t;
            model.fill_snapshot(c, s);
            s.ledger = ledger;
            s.flux_int_col = flux_int;
            traj.snaps.push_back(std::move(s));
            while (next_snap <= t + kTimeEps) next_snap += snap_dt;
        }
        if (t >= T - kTimeEps) break;

        // snapshots are taken at the first step boundary past each mark, so
        // a fixed dt stays exactly fixed until the final partial step
        double h = cfg.dt_policy == DtPolicy::Fixed
                       ? cfg.dt
                       : cfl_dt(diag.u1_sup, diag.u2_sup, model.dx(), model.dy(),
                                cfg.cfl_safety, cfg.dt_max);
        h = std::min(h, T - t);
        if (h != co_h) {
            co.compute(model.lambda(), h);
            co_h = h;
        }

        // ETDRK4 stages with the exact per-mode linear factor
        par::for_indexed(static_cast<std::int64_t>(n), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            sa[k] = co.E2[k] * c[k] + co.Q[k] * nl[k];
        });
        if (cfg.nonlinear) model.nonlinear(sa, na, nullptr); else std::fill(na.begin(), na.end(), cplx{0.0, 0.0});
        par::for_indexed(static_cast<std::int64_t>(n), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            sb[k] = co.E2[k] * c[k] + co.Q[k] * na[k];
        });
        if (cfg.nonlinear) model.nonlinear(sb, nb, nullptr); else std::fill(nb.begin(), nb.end(), cplx{0.0, 0.0});
        par::for_indexed(static_cast<std::int64_t>(n), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            sc[k] = co.E2[k] * sa[k] + co.Q[k] * (2.0 * nb[k] - nl[k]);
        });
        if (cfg.nonlinear) model.nonlinear(sc, nc, nullptr); else std::fill(nc.begin(), nc.end(), cplx{0.0, 0.0});
        par::for_indexed(static_cast<std::int64_t>(n), [&](std::int64_t i) {
            const size_t k = static_cast<size_t>(i);
            cn[k] = co.E[k] * c[k] + co.F1[k] * nl[k] + 2.0 * co.F2[k] * (na[k] + nb[k]) +
                    co.F3[k] * nc[k];
        });
        c.swap(cn);

        prev_r1 = cur_r1;
        prev_l1 = cur_l1;
        prev_flux = diag.flux_col;
        pending_h = h;
        t += h;
        ++traj.steps_taken;
    }

    traj.final_coeffs = std::move(c);
    return traj;
}

}  // namespace

Trajectory run(const SolverConfig& config) {
    config.validate();
    if (config.domain == Domain::Strip) {
        StripModel model(config);
        return run_impl(model, config);
    }
    TorusModel model(config);
    Trajectory traj;
    if (config.sigma.kind != ProfileKind::Zero) {
        SampledProfile sp = sample_profile(config.sigma, model.grid(), config.N);
        if (sp.exceeds_half_n)
            throw ParameterError("run: |sigma|_inf exceeds N/2, outside the stable regime");
        traj = run_impl(model, config);
        traj.sigma_weighted_l1 = sp.weighted_l1(config.m + 1, model.grid().length);
        return traj;
    }
    return run_impl(model, config);
}

TorusField nonlinear_term(const TorusField& theta, const SampledProfile* sigma) {
    TorusVelocity u = biot_savart(theta);
    TorusField th1 = derivative(theta, 1);
    TorusField th2 = derivative(theta, 2);
    TorusTransformer padded(padded_grid(theta.grid));
    RealArray2 pu1 = padded.evaluate(u.u1);
    RealArray2 pu2 = padded.evaluate(u.u2);
    RealArray2 pt1 = padded.evaluate(th1);
    RealArray2 pt2 = padded.evaluate(th2);
    RealArray2 w(pu1.n0, pu1.n1);
    const int cols = pu1.n1;
    std::vector<double> sig;
    if (sigma) {
        // resample the stored 1-D spectrum onto the padded vertical line
        sig.resize(static_cast<size_t>(cols));
        const int K = (static_cast<int>(sigma->spectrum.size()) - 1) / 2;
        for (int j = 0; j < cols; ++j) {
            const double x2 = theta.grid.length * j / cols;
            cplx acc{0.0, 0.0};
            for (int k = -K; k <= K; ++k)
                acc += sigma->spectrum[static_cast<size_t>(k + K)] *
                       std::polar(1.0, 2.0 * kPi * k * x2 / theta.grid.length);
            sig[static_cast<size_t>(j)] = acc.real();
        }
    }
    for (size_t i = 0; i < w.v.size(); ++i) {
        double val = -(pu1.v[i] * pt1.v[i] + pu2.v[i] * pt2.v[i]);
        if (sigma) val -= pu2.v[i] * sig[i % static_cast<size_t>(cols)];
        w.v[i] = val;
    }
    return padded.forward_truncated(w, theta.grid);
}

StripFieldX nonlinear_term(const StripFieldX& theta) {
    StripVelocity u = biot_savart(theta);
    StripFieldX t1 = derivative1(theta);
    StripFieldY t2 = derivative2(theta);
    StripTransformer padded(padded_grid(theta.grid));
    RealArray2 pu1 = padded.evaluate_y(u.u1);
    RealArray2 pu2 = padded.evaluate_x(u.u2);
    RealArray2 pt1 = padded.evaluate_x(t1);
    RealArray2 pt2 = padded.evaluate_y(t2);
    RealArray2 w(pu1.n0, pu1.n1);
    for (size_t i = 0; i < w.v.size(); ++i)
        w.v[i] = -(pu1.v[i] * pt1.v[i] + pu2.v[i] * pt2.v[i]);
    StripFieldX full = padded.forward_x(w, false);
    StripFieldX out{theta.grid};
    for (int p = -theta.grid.pmodes; p <= theta.grid.pmodes; ++p)
        for (int q = 1; q <= theta.grid.qmodes; ++q) out.at(p, q) = full.at(p, q);
    return out;
}

}  // namespace stratipm
