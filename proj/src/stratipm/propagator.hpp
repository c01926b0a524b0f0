#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stratipm/plane_quadrature.hpp"
#include "stratipm/strip.hpp"
#include "stratipm/torus.hpp"

namespace stratipm {

// Exact linear semigroup of the stratified linearization: every mode is
// multiplied by e^{-N xi1^2/|xi|^2 t}. Special modes:
//   torus/box mean (0,0)      -> e^{-N t}   (the mean-value law)
//   torus (0,n2), n2 != 0     -> 1          (non-decaying modes)
//   strip (0,q)               -> 1          (u2 has no p = 0 content)
std::vector<double> damping_rates(const TorusGrid& g, double N);
std::vector<double> damping_rates(const StripGrid& g, double N);

TorusField semigroup_apply(const TorusField& f, double N, double t);
StripFieldX semigroup_apply(const StripFieldX& f, double N, double t);

// One integrand evaluation of the mild-formulation source integral; equal to
// semigroup_apply with the elapsed time by definition.
TorusField duhamel_source_apply(const TorusField& source, double N, double t_elapsed);
StripFieldX duhamel_source_apply(const StripFieldX& source, double N, double t_elapsed);

struct DecayCurve {
    std::vector<double> t;      // physical times
    std::vector<double> nt;     // N * t
    std::vector<double> value;  // nonnegative norm values

    void push(double tv, double ntv, double val);
};

// ---- continuous-xi linear theory on the plane ----

struct WitnessSpec {
    double eps = 0.05;   // > 0, small
    double s = 2.0;      // >= 1
    int j = 0;           // >= 0
    double xi_max = 5e5; // quadrature truncation
};

// Pointwise spectral density |xi1|^{-1/2+2 eps} (1+|xi|^2)^{-s/2-1/4-2 eps};
// integrable at xi1 = 0, axis-avoiding quadrature required.
std::function<double(double, double)> sharpness_witness(const WitnessSpec& spec);

enum class PlaneNormKind { L1, L2, L1Weighted };

// Precomputes density and kernel-ratio tables on the quadrature nodes so a
// whole time sweep costs one exp per node per time.
class PlaneSemigroupSweep {
  public:
    PlaneSemigroupSweep(const std::function<double(double, double)>& density,
                        const PlaneQuadrature& quad, PlaneNormKind kind, int j);

    // quadrature value of int (|xi1|/|xi|)^j e^{-N xi1^2/|xi|^2 t} |f| dxi
    // (or the L2 analogue)
    double value(double N, double t) const;
    DecayCurve curve(double N, const std::vector<double>& times) const;

  private:
    PlaneNormKind kind_;
    int j_;
    std::vector<double> w_, ratio_, dens_;
};

// Spec'd one-shot entry point: integrates with the given quadrature and
// verifies truncation by doubling xi_max (RefinementError on failure).
double plane_norm_quadrature(const std::function<double(double, double)>& density, double N,
                             double t, PlaneNormKind kind, int j, const PlaneQuadrature& quad,
                             double truncation_tol = 1e-6);

// sqrt( int (1+|xi|^2)^s |f|^2 dxi )
double plane_hs_norm(const std::function<double(double, double)>& density, double s,
                     const PlaneQuadrature& quad);

// (1+Nt)^{1/4} * L1-semigroup value / ||f||_{H^s}; bounded curves are the
// testable form of the kernel-decay estimate.
DecayCurve kernel_decay_ratio(const std::function<double(double, double)>& density, double N,
                              const std::vector<double>& times, double s,
                              const PlaneQuadrature& quad);

// ---- spectral sweeps used by the rate scenarios (no time stepping) ----

// Curves of ||theta_bar||_{H^s}, ||u||_{H^s}, ||u2||_{H^s} under the pure
// semigroup. Returned ids: theta_bar_H<s>, u_H<s>, u2_H<s> for s = 0..m,
// plus u_Hm / u2_Hm aliases and grad_u2_Hm1.
std::map<std::string, DecayCurve> semigroup_norm_sweep(const TorusField& theta0, double N,
                                                       const std::vector<double>& times, int m);
std::map<std::string, DecayCurve> semigroup_norm_sweep(const StripFieldX& theta0, double N,
                                                       const std::vector<double>& times, int m);

}  // namespace stratipm
