#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stratipm/random_field.hpp"
#include "stratipm/stratification.hpp"
#include "stratipm/strip.hpp"
#include "stratipm/torus.hpp"

namespace stratipm {

enum class Domain { Torus, Strip, PlaneBox };
enum class DtPolicy { Fixed, Cfl };
enum class RunStatus { Completed, BlowUp };

struct SolverConfig {
    Domain domain = Domain::Torus;
    double N = 1.0;

    int modes = 64;  // torus/box K
    int phys = 0;    // 0 -> auto
    int pmodes = 32, qmodes = 32;  // strip
    double box_length = 1.0;

    int m = 4;  // reporting regularity

    ProfileSpec sigma{};  // zero unless PlaneBox
    InitSpec init{};

    DtPolicy dt_policy = DtPolicy::Cfl;
    double dt = 1e-2;        // Fixed policy step
    double dt_max = 0.1;
    double cfl_safety = 0.5;

    double final_time = 1.0;
    double snapshot_dt = 0.0;  // 0 -> final_time / 64

    // scenario-level conveniences, resolved before run():
    double smallness = 0.0;    // if > 0: N = smallness * (||theta0||_Hm + sigma term)
    double final_nt = 0.0;     // if > 0: final_time = final_nt / N
    double snapshot_nt = 0.0;  // if > 0: snapshot_dt = snapshot_nt / N

    bool dealias = true;
    bool nonlinear = true;

    void validate() const;  // throws ParameterError / ConfigError
};

struct EnergyLedger {
    double sup_theta_hm_sq = 0.0;
    double int_r1_hm_sq = 0.0;  // int_0^t ||R1 theta||_{H^m}^2
    double int_u2_l1w = 0.0;    // int_0^t ||(1+w2)^{1/2} F u2||_{l1}

    // sup ||theta||_{H^m}^2 + N int ||R1 theta||^2 <= 4 ||theta0||^2
    bool violates(double N, double theta0_hm_sq) const {
        return sup_theta_hm_sq + N * int_r1_hm_sq > 4.0 * theta0_hm_sq;
    }
};

struct Snapshot {
    double t = 0.0, nt = 0.0;
    std::vector<double> theta_bar_hs;  // s = 0..m
    std::vector<double> u_hs;
    std::vector<double> u2_hs;
    double grad_u2_hm1 = 0.0;
    double theta_hm = 0.0;
    double r1_theta_hm = 0.0;
    double u2_l1w = 0.0;          // ||(1+w2)^{1/2} F u2||_{l1}, the W^{1,inf} proxy
    double theta_sup = 0.0, u1_sup = 0.0, u2_sup = 0.0;  // grid maxima
    std::complex<double> theta_mean{0.0, 0.0};           // integral over the domain
    double u1_mean_abs = 0.0;   // max_k |F u1(0, k)|
    double u2_mean_abs = 0.0;   // max over k != 0 (torus) / all q (strip)
    double boundary_trace = 0.0;  // strip u2 and theta at x2 = +-1
    std::vector<std::complex<double>> mean_col;      // F theta(0, .)
    std::vector<std::complex<double>> flux_int_col;  // int_0^t n1=0 flux
    EnergyLedger ledger;
};

struct Trajectory {
    SolverConfig config;
    double theta0_hm = 0.0;
    std::vector<std::complex<double>> theta0_mean_col;
    std::vector<Snapshot> snaps;
    std::vector<std::complex<double>> final_coeffs;  // theta at the last reached time
    RunStatus status = RunStatus::Completed;
    double status_time = 0.0;
    bool ledger_flagged = false;
    double ledger_violation_time = -1.0;
    int steps_taken = 0;
    double sigma_weighted_l1 = 0.0;  // the smallness functional of sigma
};

// Exponential integrator coefficients for dc/dt = -lambda c + N(c), one
// entry per mode. Small |lambda h| uses series evaluation.
struct Etdrk4Coeffs {
    std::vector<double> E, E2, Q, F1, F2, F3;
    void compute(const std::vector<double>& lambda, double h);
};

// phi1(z) = (e^z - 1)/z, series-stable near zero
double phi1_stable(double z);

Trajectory run(const SolverConfig& config);

// CFL bound from grid spacing and velocity maxima; dt_max when no motion.
double cfl_dt(double u1_sup, double u2_sup, double dx, double dy, double safety, double dt_max);

// Nonlinear term -u.grad(theta) - u2 sigma for a standalone field (testing
// surface; run() uses the same pipeline through persistent workspaces).
TorusField nonlinear_term(const TorusField& theta, const SampledProfile* sigma);
StripFieldX nonlinear_term(const StripFieldX& theta);

}  // namespace stratipm
