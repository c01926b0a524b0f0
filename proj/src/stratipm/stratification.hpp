#pragma once

#include <string>
#include <vector>

#include "stratipm/torus.hpp"

namespace stratipm {

// The background density slope is N + sigma(x2). sigma lives on the vertical
// axis of a periodized box; it must be supported well inside the box.
enum class ProfileKind { Zero, CosineMode, GaussianBump };

struct ProfileSpec {
    ProfileKind kind = ProfileKind::Zero;
    double amplitude = 0.0;
    double mode = 1.0;    // CosineMode: sigma = A cos(2 pi mode x2 / L)
    double center = 0.0;  // GaussianBump: sigma = A exp(-(x2-c)^2 / (2 w^2))
    double width = 1.0;
};

struct SampledProfile {
    std::vector<double> samples;   // sigma(x2_j), x2_j = j L / M
    std::vector<cplx> spectrum;    // 1-D coefficients, modes -K..K
    bool exceeds_half_n = false;   // |sigma|_inf > N/2 (stability hypothesis)
    double sup = 0.0;

    // sum (1 + (k/L)^2)^{order/2} |sigma_hat_k|, the smallness functional
    double weighted_l1(double order, double length) const;
};

// Samples sigma on the vertical collocation line of `grid` and takes its 1-D
// spectrum. Flags (not fails) when |sigma|_inf exceeds N/2.
SampledProfile sample_profile(const ProfileSpec& spec, const TorusGrid& grid, double N);

// closed-form values used both by the sampler and the test oracles
double profile_value(const ProfileSpec& spec, double x2, double length);

}  // namespace stratipm
