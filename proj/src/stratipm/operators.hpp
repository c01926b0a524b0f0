#pragma once

#include <string>

#include "stratipm/strip.hpp"
#include "stratipm/torus.hpp"

namespace stratipm {

// Discrete norms over the spectral representations.
//
// Frequency conventions follow each domain's own usage: the torus Sobolev
// weight is (1 + |n|^2)^{s/2} in the integer mode n (box grids use n/L),
// while the strip weight is (1 + (2 pi p)^2 + (pi q / 2)^2)^{s/2}. The two
// scalings do NOT match each other; they are intentionally kept per-domain.
// Derivative operators always carry the true 2*pi factors.
enum class NormKind {
    SobolevH,       // sqrt( sum (1+w2)^s |c|^2 )
    HomogeneousH,   // sqrt( sum w2^s |c|^2 )
    SpectralL1W,    // sum (1+w2)^{s/2} |c|
    AnisoL1x2L2x1,  // sum_{k2} sqrt( sum_{k1} (1+w2)^s |c|^2 )
    L2,             // SobolevH with s = 0
    LinfProxy,      // weighted spectral l1; grid sup must be logged separately
};

struct NormSpec {
    NormKind kind = NormKind::L2;
    double order = 0.0;  // s >= 0

    static NormSpec sobolev(double s) { return {NormKind::SobolevH, s}; }
    static NormSpec homogeneous(double s) { return {NormKind::HomogeneousH, s}; }
    static NormSpec l1w(double s) { return {NormKind::SpectralL1W, s}; }
    static NormSpec l2() { return {NormKind::L2, 0.0}; }
    static NormSpec linf_proxy(double s) { return {NormKind::LinfProxy, s}; }
};

double norm(const TorusField& f, const NormSpec& spec);
double norm(const StripFieldX& f, const NormSpec& spec);
double norm(const StripFieldY& f, const NormSpec& spec);

// true sup-norm on the collocation grid (diagnostic companion of LinfProxy)
double grid_max(const TorusField& f);
double grid_max(const StripFieldX& f);

// Riesz transform along x1. Torus multiplier -i n1/|n| (0 on n = 0); strip
// multiplier -2 pi i p / sqrt((2 pi p)^2 + (pi q/2)^2), 0 whenever p = 0.
TorusField riesz1(const TorusField& f);
StripFieldX riesz1(const StripFieldX& f);
StripFieldY riesz1(const StripFieldY& f);

struct TorusVelocity {
    TorusField u1, u2;
};
struct StripVelocity {
    StripFieldY u1;
    StripFieldX u2;
};

// Velocity from density via the pressure-eliminated Darcy law.
// Torus: F u1 = -n1 n2/|n|^2 F theta, F u2 = n1^2/|n|^2 F theta (n != 0),
//        F u2(0) = F theta(0).
// Strip: F_b u2 = (2 pi p)^2 / D F_b theta on B_{p,q},
//        F_c u1 = +i pi^2 p q / D F_b theta on C_{p,q},
//        D = (2 pi p)^2 + (pi q/2)^2; both vanish for p = 0.
TorusVelocity biot_savart(const TorusField& theta);
StripVelocity biot_savart(const StripFieldX& theta);

// max over modes of |div u| / (|xi| |u|), the discrete divergence residual
double divergence_residual(const TorusVelocity& u);
double divergence_residual(const StripVelocity& u);

// d/dx_axis. Torus: multiply by 2 pi i xi_axis. Strip: d1 preserves the
// space; d2 swaps X <-> Y with multipliers +(pi/2)q (X->Y), -(pi/2)q (Y->X).
TorusField derivative(const TorusField& f, int axis);
StripFieldX derivative1(const StripFieldX& f);
StripFieldY derivative1(const StripFieldY& f);
StripFieldY derivative2(const StripFieldX& f);
StripFieldX derivative2(const StripFieldY& f);

// Discrete Young-type convolution bound probe:
//   lhs   = || (1+w2)^{s/2} F(fg) ||_{l^p}
//   rhs   = || (1+w2)^{s/2} F f ||_{l^q} * || (1+w2)^{s/2} F g ||_{l^r}
// with 1/q + 1/r = 1 + 1/p. Returns both sides and their ratio.
struct ConvolutionCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};
ConvolutionCheck convolution_bound_check(const TorusField& f, const TorusField& g, double s,
                                         double p, double q, double r);

// lp norm of the weighted coefficient sequence (p = inf accepted as > 1e9)
double weighted_lp(const TorusField& f, double s, double p);

}  // namespace stratipm
