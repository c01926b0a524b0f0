#include "stratipm/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/operators.hpp"
#include "stratipm/random_field.hpp"

namespace stratipm {

FitResult fit_decay_exponent(const DecayCurve& curve, double nt_lo, double nt_hi) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < curve.nt.size(); ++i) {
        const double nt = curve.nt[i];
        if (nt < nt_lo || nt > nt_hi) continue;
        const double v = curve.value[i];
        if (v <= 0.0) throw ParameterError("fit_decay_exponent: nonpositive value in window");
        xs.push_back(std::log(1.0 + nt));
        ys.push_back(std::log(v));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 8) throw ParameterError("fit_decay_exponent: fewer than 8 samples in window");
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xs[static_cast<size_t>(i)];
        sy += ys[static_cast<size_t>(i)];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[static_cast<size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<size_t>(i)] - my);
    }
    FitResult out;
    out.samples = n;
    out.exponent = sxy / sxx;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[static_cast<size_t>(i)] - my - out.exponent * (xs[static_cast<size_t>(i)] - mx);
        ss += r * r;
    }
    out.residual = std::sqrt(ss / n);
    out.std_error = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    return out;
}

std::map<std::string, DecayCurve> trajectory_curves(const Trajectory& traj) {
    std::map<std::string, DecayCurve> out;
    if (traj.snaps.empty()) return out;
    const int m = traj.config.m;
    auto add = [&](const std::string& id, auto&& get) {
        DecayCurve c;
        for (const Snapshot& s : traj.snaps) c.push(s.t, s.nt, get(s));
        out[id] = std::move(c);
    };
    for (int s = 0; s <= m; ++s) {
        add("theta_bar_H" + std::to_string(s),
            [s](const Snapshot& sn) { return sn.theta_bar_hs[static_cast<size_t>(s)]; });
        add("u_H" + std::to_string(s),
            [s](const Snapshot& sn) { return sn.u_hs[static_cast<size_t>(s)]; });
        add("u2_H" + std::to_string(s),
            [s](const Snapshot& sn) { return sn.u2_hs[static_cast<size_t>(s)]; });
    }
    add("grad_u2_Hm1", [](const Snapshot& s) { return s.grad_u2_hm1; });
    add("theta_hm", [](const Snapshot& s) { return s.theta_hm; });
    add("r1_theta_hm", [](const Snapshot& s) { return s.r1_theta_hm; });
    add("u2_l1w", [](const Snapshot& s) { return s.u2_l1w; });
    add("theta_sup", [](const Snapshot& s) { return s.theta_sup; });
    add("u1_sup", [](const Snapshot& s) { return s.u1_sup; });
    add("u2_sup", [](const Snapshot& s) { return s.u2_sup; });
    return out;
}

namespace {
// per-index H^s weights of the n1 = 0 column
std::vector<double> mean_col_weights(const Trajectory& traj, int s) {
    std::vector<double> w;
    if (traj.config.domain == Domain::Strip) {
        const int Q = traj.config.qmodes;
        w.resize(static_cast<size_t>(Q + 1));
        for (int q = 0; q <= Q; ++q) {
            const double v = 0.5 * 3.14159265358979323846 * q;
            w[static_cast<size_t>(q)] = std::pow(1.0 + v * v, s);
        }
        return w;
    }
    const int K = traj.config.modes;
    const double L = traj.config.domain == Domain::PlaneBox ? traj.config.box_length : 1.0;
    w.resize(static_cast<size_t>(2 * K + 1));
    for (int k = -K; k <= K; ++k) {
        const double xi = k / L;
        w[static_cast<size_t>(k + K)] = std::pow(1.0 + xi * xi, s) * L * L;
    }
    return w;
}

double weighted_col_dist(const std::vector<cplx>& a, const std::vector<cplx>& b,
                         const std::vector<double>& w) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += w[i] * std::norm(a[i] - b[i]);
    return std::sqrt(acc);
}
}  // namespace

ProfileExtract extract_profile(const Trajectory& traj) {
    if (traj.status != RunStatus::Completed)
        throw ParameterError("extract_profile: run did not complete");
    if (traj.snaps.empty()) throw ParameterError("extract_profile: no snapshots");
    if (traj.config.sigma.kind != ProfileKind::Zero)
        throw ParameterError("extract_profile: flux route undefined with a background sigma");
    ProfileExtract out;
    const Snapshot& last = traj.snaps.back();
    out.sigma_mean_route = last.mean_col;
    out.sigma_flux_route.resize(last.mean_col.size());
    for (size_t i = 0; i < out.sigma_flux_route.size(); ++i)
        out.sigma_flux_route[i] = traj.theta0_mean_col[i] - last.flux_int_col[i];

    const std::vector<double> w0 = mean_col_weights(traj, 0);
    double na = 0.0;
    for (size_t i = 0; i < out.sigma_flux_route.size(); ++i)
        na += w0[i] * std::norm(out.sigma_flux_route[i]);
    na = std::sqrt(na);
    out.rel_diff = weighted_col_dist(out.sigma_mean_route, out.sigma_flux_route, w0) /
                   std::max(na, 1e-300);

    // convergence curve against the mean route: the flux route carries the
    // O(dt^2) trapezoid floor of the time quadrature, the mean route is the
    // limit the column actually approaches
    for (const Snapshot& s : traj.snaps)
        out.residual_curve.push(s.t, s.nt,
                                weighted_col_dist(s.mean_col, out.sigma_mean_route, w0));
    return out;
}

MeanLawReport audit_mean_laws(const Trajectory& traj) {
    MeanLawReport rep;
    if (traj.snaps.empty()) return rep;
    const cplx mean0 = traj.snaps.front().theta_mean;
    const double scale = std::max(std::abs(mean0), 1e-300);
    for (const Snapshot& s : traj.snaps) {
        if (traj.config.domain == Domain::Strip) {
            rep.conservation_max_rel =
                std::max(rep.conservation_max_rel, std::abs(s.theta_mean - mean0) / scale);
        } else {
            const cplx expected = mean0 * std::exp(-traj.config.N * s.t);
            rep.decay_law_max_rel =
                std::max(rep.decay_law_max_rel, std::abs(s.theta_mean - expected) / scale);
        }
        rep.u1_mean_max = std::max(rep.u1_mean_max, s.u1_mean_abs);
        rep.u2_mean_max = std::max(rep.u2_mean_max, s.u2_mean_abs);
        rep.boundary_trace_max = std::max(rep.boundary_trace_max, s.boundary_trace);
    }
    return rep;
}

DecayReport build_report(const std::map<std::string, DecayCurve>& curves,
                         const std::vector<RatePrediction>& predictions) {
    DecayReport rep;
    for (const RatePrediction& p : predictions) {
        RateRow row;
        row.norm_id = p.norm_id;
        row.predicted = p.exponent;
        row.tol = p.tol;
        row.two_sided = p.two_sided;
        auto it = curves.find(p.norm_id);
        if (it == curves.end()) {
            row.fitted = std::nan("");
            row.pass = false;
        } else {
            try {
                FitResult fit = fit_decay_exponent(it->second, p.nt_lo, p.nt_hi);
                row.fitted = fit.exponent;
                row.std_error = fit.std_error;
                row.pass = p.two_sided ? std::abs(fit.exponent - p.exponent) <= p.tol
                                       : fit.exponent <= p.exponent + p.tol;
            } catch (const ParameterError&) {
                row.fitted = std::nan("");
                row.pass = false;
            }
        }
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

DecayReport build_report(const Trajectory& traj, const std::vector<RatePrediction>& predictions) {
    std::map<std::string, DecayCurve> curves = trajectory_curves(traj);
    // theta - sigma ladder for runs with a usable flux route
    bool want_sigma = false;
    for (const RatePrediction& p : predictions)
        if (p.norm_id.rfind("theta_minus_sigma_H", 0) == 0 || p.norm_id == "mean_residual_L2")
            want_sigma = true;
    if (want_sigma) {
        ProfileExtract prof = extract_profile(traj);
        for (int s = 0; s <= traj.config.m; ++s) {
            const std::vector<double> w = mean_col_weights(traj, s);
            DecayCurve c;
            for (size_t i = 0; i < traj.snaps.size(); ++i) {
                const Snapshot& sn = traj.snaps[i];
                const double colpart =
                    weighted_col_dist(sn.mean_col, prof.sigma_flux_route, w);
                const double barpart = sn.theta_bar_hs[static_cast<size_t>(s)];
                c.push(sn.t, sn.nt, std::sqrt(colpart * colpart + barpart * barpart));
            }
            curves["theta_minus_sigma_H" + std::to_string(s)] = std::move(c);
        }
        curves["mean_residual_L2"] = extract_profile(traj).residual_curve;
    }
    return build_report(curves, predictions);
}

// ---------- inequality ensembles ----------

namespace {
TorusField ensemble_field(int K, std::uint64_t seed, int sample, double decay, int tag = 0) {
    InitSpec spec;
    spec.family = InitFamily::AlgebraicTail;
    spec.seed = hash_mix(seed ^ hash_mix(static_cast<std::uint64_t>(sample) * 2654435761ULL +
                                         static_cast<std::uint64_t>(tag)));
    spec.tail_exponent = decay;
    spec.kill_p0 = false;
    spec.mean = 0.0;
    return make_initial_torus(TorusGrid(K), spec);
}
}  // namespace

InequalityReport verify_balancing(int K, int samples, const std::vector<double>& m_values,
                                  int sobolev_m, std::uint64_t seed) {
    InequalityReport rep;
    rep.id = "balancing";
    rep.ensemble = samples * static_cast<int>(m_values.size());
    const TorusGrid grid(K);
    for (int smp = 0; smp < samples; ++smp) {
        TorusField th = ensemble_field(K, seed, smp, 2.0);
        double A = 0.0, B = 0.0, R = 0.0;  // pure-frequency form in n
        for (int n1 = -K; n1 <= K; ++n1)
            for (int n2 = -K; n2 <= K; ++n2) {
                if (n1 == 0 && n2 == 0) continue;
                const double a2 = std::norm(th.at(n1, n2));
                if (a2 == 0.0) continue;
                const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
                const double n1sq = static_cast<double>(n1) * n1;
                A += n1sq * n1sq * std::pow(nsq, sobolev_m - 2) * a2;
                B += n1sq * n1sq * n1sq * std::pow(nsq, sobolev_m - 3) * a2;
                R += n1sq * std::pow(nsq, sobolev_m - 1) * a2;
            }
        for (double M : m_values) {
            const double lhs = A / M - B;
            const double rhs = R / (M * M);
            const double slack = std::max(rhs, A / M);
            const double viol = (lhs - rhs) / std::max(slack, 1e-300);
            rep.max_violation = std::max(rep.max_violation, viol);
            const double ratio = lhs <= 0.0 ? 0.0 : lhs / std::max(rhs, 1e-300);
            rep.max_ratio = std::max(rep.max_ratio, ratio);
            rep.mean_ratio += ratio / rep.ensemble;
        }
    }
    rep.finite = std::isfinite(rep.max_ratio);
    return rep;
}

double commutator_probe(const TorusField& th, double s) {
    const TorusGrid& g = th.grid;
    const int K = g.modes;
    TorusField u2(g), d2th(g), ld3th(g);
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            const cplx t = th.at(n1, n2);
            u2.at(n1, n2) = (static_cast<double>(n1) * n1 / nsq) * t;
            d2th.at(n1, n2) = cplx{0.0, static_cast<double>(n2)} * t;
            ld3th.at(n1, n2) =
                cplx{0.0, -std::pow(static_cast<double>(n2), 3)} * std::pow(nsq, 0.5 * (s - 2.0)) * t;
        }
    TorusField w = physical_product(u2, d2th);    // u2 * d2 theta
    TorusField v = physical_product(u2, ld3th);   // u2 * Lambda^{s-2} d2^3 theta
    cplx acc{0.0, 0.0};
    double rhs_l1 = 0.0;
    for (int n1 = -K; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            const double nsq = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            const double lam = nsq == 0.0 ? 0.0 : std::pow(nsq, 0.5 * (s - 2.0));
            const double mult = -lam * static_cast<double>(n2) * n2;  // Lambda^{s-2} d2^2
            const cplx lhs_n = mult * w.at(n1, n2) - v.at(n1, n2);
            const cplx test_n = mult * th.at(n1, n2);
            acc += lhs_n * std::conj(test_n);
            rhs_l1 += std::sqrt(nsq) * std::abs(u2.at(n1, n2));
        }
    const double ths = norm(th, NormSpec::sobolev(s));
    const double r1s = norm(riesz1(th), NormSpec::sobolev(s));
    const double rhs = rhs_l1 * ths * ths + r1s * r1s * ths;
    if (rhs == 0.0) return 0.0;
    return std::abs(acc) / rhs;
}

InequalityReport verify_commutator(int K, int samples, double s, std::uint64_t seed) {
    if (s <= 2.0) throw ParameterError("verify_commutator: s must be > 2");
    InequalityReport rep;
    rep.id = "commutator";
    rep.ensemble = samples;
    double max_lo = 0.0, max_hi = 0.0, mean = 0.0;
    for (int smp = 0; smp < samples; ++smp) {
        // tail chosen so every norm in the bound converges as K grows
        const double r_lo = commutator_probe(ensemble_field(K, seed, smp, s + 2.0), s);
        const double r_hi = commutator_probe(ensemble_field(2 * K, seed, smp, s + 2.0), s);
        max_lo = std::max(max_lo, r_lo);
        max_hi = std::max(max_hi, r_hi);
        mean += r_hi / samples;
    }
    rep.max_ratio = max_hi;
    rep.mean_ratio = mean;
    rep.drift = std::abs(max_hi - max_lo) / std::max(max_lo, 1e-300);
    rep.finite = std::isfinite(max_hi);
    return rep;
}

InequalityReport verify_convolution(int K, int samples, double s, double p, double q, double r,
                                    std::uint64_t seed) {
    InequalityReport rep;
    rep.id = "convolution";
    rep.ensemble = samples;
    double max_lo = 0.0, max_hi = 0.0, mean = 0.0;
    for (int smp = 0; smp < samples; ++smp) {
        double ratios[2];
        for (int lev = 0; lev < 2; ++lev) {
            const int KK = lev == 0 ? K : 2 * K;
            TorusField f = ensemble_field(KK, seed, smp, s + 3.0, 1);
            TorusField g = ensemble_field(KK, seed, smp, s + 3.0, 2);
            ratios[lev] = convolution_bound_check(f, g, s, p, q, r).ratio;
        }
        max_lo = std::max(max_lo, ratios[0]);
        max_hi = std::max(max_hi, ratios[1]);
        mean += ratios[1] / samples;
    }
    rep.max_ratio = max_hi;
    rep.mean_ratio = mean;
    rep.drift = std::abs(max_hi - max_lo) / std::max(max_lo, 1e-300);
    rep.finite = std::isfinite(max_hi);
    return rep;
}

InequalityReport verify_convolution_aniso(int K, int samples, double s, std::uint64_t seed) {
    InequalityReport rep;
    rep.id = "convolution_aniso";
    rep.ensemble = samples;
    double max_lo = 0.0, max_hi = 0.0, mean = 0.0;
    for (int smp = 0; smp < samples; ++smp) {
        double ratios[2];
        for (int lev = 0; lev < 2; ++lev) {
            const int KK = lev == 0 ? K : 2 * K;
            TorusField f = ensemble_field(KK, seed, smp, s + 3.0, 1);
            // vertical 1-D factor: modes (0, k) only
            TorusField sig(f.grid);
            for (int k = 1; k <= KK; ++k) {
                const double amp = std::pow(1.0 + static_cast<double>(k) * k, -0.5 * (s + 2.0));
                const double ph = 6.283185307179586 *
                                  unit_uniform(hash_mix(seed ^ hash_mix(
                                      static_cast<std::uint64_t>(smp) * 977 + static_cast<std::uint64_t>(k))));
                const cplx v = amp * cplx{std::cos(ph), std::sin(ph)};
                sig.at(0, k) = v;
                sig.at(0, -k) = std::conj(v);
            }
            TorusField fs = physical_product(f, sig);
            const double lhs = weighted_lp(fs, s, 1.0);
            double sig_l1 = 0.0;
            for (int k = -KK; k <= KK; ++k)
                sig_l1 += std::pow(1.0 + static_cast<double>(k) * k, 0.5 * s) *
                          std::abs(sig.at(0, k));
            const double rhs = weighted_lp(f, s, 1.0) * sig_l1;
            ratios[lev] = rhs == 0.0 ? 0.0 : lhs / rhs;
        }
        max_lo = std::max(max_lo, ratios[0]);
        max_hi = std::max(max_hi, ratios[1]);
        mean += ratios[1] / samples;
    }
    rep.max_ratio = max_hi;
    rep.mean_ratio = mean;
    rep.drift = std::abs(max_hi - max_lo) / std::max(max_lo, 1e-300);
    rep.finite = std::isfinite(max_hi);
    return rep;
}

}  // namespace stratipm
