#pragma once

#include <map>
#include <string>
#include <vector>

#include "stratipm/propagator.hpp"
#include "stratipm/solver.hpp"

namespace stratipm {

struct FitResult {
    double exponent = 0.0;
    double std_error = 0.0;
    double residual = 0.0;  // rms of log residuals
    int samples = 0;
};

// Least-squares slope of log(value) against log(1 + Nt) inside the window.
// Needs >= 8 samples with positive values.
FitResult fit_decay_exponent(const DecayCurve& curve, double nt_lo, double nt_hi);

struct RatePrediction {
    std::string norm_id;
    double exponent = 0.0;
    double tol = 0.15;
    bool two_sided = true;  // false: pass iff fitted <= exponent + tol
    double nt_lo = 10.0;
    double nt_hi = 1000.0;
};

struct RateRow {
    std::string norm_id;
    double fitted = 0.0;
    double std_error = 0.0;
    double predicted = 0.0;
    double tol = 0.0;
    bool two_sided = true;
    bool pass = false;
};

struct DecayReport {
    std::vector<RateRow> rows;
    bool all_pass = true;
};

DecayReport build_report(const std::map<std::string, DecayCurve>& curves,
                         const std::vector<RatePrediction>& predictions);
DecayReport build_report(const Trajectory& traj, const std::vector<RatePrediction>& predictions);

// Norm curves recorded in a trajectory's snapshots, keyed like the sweep ids
// (theta_bar_H<s>, u_H<s>, u2_H<s>, grad_u2_Hm1, theta_hm, r1_theta_hm,
// u2_l1w, theta_sup, ...).
std::map<std::string, DecayCurve> trajectory_curves(const Trajectory& traj);

// ---- asymptotic profile ----

struct ProfileExtract {
    std::vector<cplx> sigma_mean_route;  // horizontal mean of theta at final time
    std::vector<cplx> sigma_flux_route;  // initial mean minus accumulated flux
    double rel_diff = 0.0;               // l2 distance between the routes, relative
    DecayCurve residual_curve;           // || mean col(t) - sigma_hat ||_{L2(x2)}
};

ProfileExtract extract_profile(const Trajectory& traj);

// ---- mean-value laws ----

struct MeanLawReport {
    double decay_law_max_rel = 0.0;     // torus: |mean(t) - e^{-Nt} mean(0)| rel
    double conservation_max_rel = 0.0;  // strip: |mean(t) - mean(0)| rel
    double u1_mean_max = 0.0;
    double u2_mean_max = 0.0;
    double boundary_trace_max = 0.0;
};

MeanLawReport audit_mean_laws(const Trajectory& traj);

// ---- inequality ensembles ----

struct InequalityReport {
    std::string id;
    int ensemble = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double max_violation = 0.0;  // balancing: worst (lhs - rhs) relative slack
    double drift = 0.0;          // relative change of max_ratio under K doubling
    bool finite = true;
};

// (1/M)||d1 R1 theta||^2_{Hdot^{m-1}} - ||d1 R1^2 theta||^2_{Hdot^{m-1}}
//   <= (1/M^2) ||R1 theta||^2_{Hdot^m}
// checked per spectrum for each M; exact, no constant.
InequalityReport verify_balancing(int K, int samples, const std::vector<double>& m_values,
                                  int sobolev_m, std::uint64_t seed);

// | int (L^{s-2} d2^2(u2 d2 th) - u2 L^{s-2} d2^3 th) L^{s-2} d2^2 th |
//   vs  || |n| F u2 ||_l1 ||th||_{H^s}^2 + ||R1 th||_{H^s}^2 ||th||_{H^s}
// with u2 = -d1^2 (-Lap)^{-1} th; empirical constant and K->2K drift.
InequalityReport verify_commutator(int K, int samples, double s, std::uint64_t seed);

// the single-field commutator ratio LHS/RHS used by the ensemble
double commutator_probe(const TorusField& theta, double s);

// weighted l1 convolution bound (and general Young triples through
// operators::convolution_bound_check); empirical constant and drift.
InequalityReport verify_convolution(int K, int samples, double s, double p, double q, double r,
                                    std::uint64_t seed);

// anisotropic variant with a 1-D vertical factor
InequalityReport verify_convolution_aniso(int K, int samples, double s, std::uint64_t seed);

}  // namespace stratipm
