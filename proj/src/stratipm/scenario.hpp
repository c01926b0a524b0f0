#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratipm/analysis.hpp"
#include "stratipm/solver.hpp"

namespace stratipm {

// Presets map one runnable experiment to one claim; the config file is a
// flat "key = value" document with one [section] per module.

struct SweepSettings {
    Domain domain = Domain::Torus;
    int modes = 256;
    int pmodes = 128, qmodes = 128;
    int m = 4;
    double N = 1.0;
    double nt_lo = 1.0, nt_hi = 2000.0;
    int points = 33;
    InitSpec init{};
};

struct KernelSettings {
    double xi_max = 64.0;
    double inner = 1e-16;
    int nodes_per_panel = 10;
    double witness_eps = 0.05;
    double witness_s = 2.0;
    double ratio_s = 2.0;      // H^s normalization of the ratio curve
    double gaussian_scale = 1.0;
    double nt_lo = 1.0, nt_hi = 1e6;
    int points = 25;
    double truncation_tol = 1e-6;
};

struct InequalitySettings {
    int balancing_modes = 32;
    int balancing_samples = 1000;
    int balancing_sobolev_m = 4;
    int commutator_modes = 32;
    int commutator_samples = 100;
    double commutator_s = 3.0;
    int convolution_modes = 32;
    int convolution_samples = 100;
    double convolution_s = 2.0;
    double drift_tol = 0.2;
    double balancing_slack = 1e-12;
    std::uint64_t seed = 7;
};

struct CheckSettings {
    double profile_tol = 0.0;        // two-route sigma agreement (0 = skip)
    double meanlaw_tol = 0.0;        // torus e^{-Nt} mean law, relative
    double conservation_tol = 0.0;   // strip mean conservation, relative
    double u_mean_tol = 0.0;         // horizontal mean of u
    double boundary_tol = 0.0;       // strip boundary traces
    bool require_ledger = false;     // fail when the energy ledger flags
    double kernel_variation_max = 0.0;  // compensated-curve max/min bound
    double ratio_bound = 0.0;           // kernel ratio curve upper bound
};

struct Scenario {
    std::string id;
    std::string kind;  // linear_sweep nonlinear_run kernel_decay sharpness inequalities mean_laws
    std::string anchor;
    std::string description;
    SweepSettings sweep;
    SolverConfig solver;
    SolverConfig solver2;  // mean_laws runs a second (strip) config
    bool has_solver2 = false;
    KernelSettings kernel;
    InequalitySettings ineq;
    CheckSettings checks;
    std::vector<RatePrediction> predictions;
};

struct CheckRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioResult {
    int exit_code = 0;  // 0 pass / 1 config / 2 blow-up / 3 ledger / 4 io / 5 checks failed
    std::vector<CheckRow> checks;
    std::vector<std::string> artifacts;
};

Scenario parse_config(const std::string& path);
Scenario parse_config_text(const std::string& text, const std::string& origin);
std::string emit_config(const Scenario& s);

std::vector<std::string> preset_ids();
Scenario preset(const std::string& id);

ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir, bool quiet,
                            std::uint64_t seed_override = 0);

// Applies the scenario-level conveniences (smallness -> N, final_nt ->
// final_time, snapshot_nt) so the returned config can go straight to run().
SolverConfig resolve_solver(const SolverConfig& in, std::uint64_t seed_override = 0);

// log-spaced Nt ladder mapped to physical times for a given N
std::vector<double> log_spaced_times(double N, double nt_lo, double nt_hi, int points);

}  // namespace stratipm
