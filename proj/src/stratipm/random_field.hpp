#pragma once

#include <cstdint>

#include "stratipm/strip.hpp"
#include "stratipm/torus.hpp"

namespace stratipm {

// Reproducible initial-data families. Phases come from a per-mode hash of
// (seed, n1, n2), so the same seed draws the same function at any resolution.
enum class InitFamily {
    BandLimited,    // unit-amplitude random phases on |n| <= band
    AlgebraicTail,  // |F theta0| = (1 + w2)^{-tail_exponent/2}
    WitnessTail,    // |F theta0| = |xi1|^{-1/2+2 eps} (1+|xi|^2)^{-s/2-1/4-2 eps}
    SingleMode,     // one conjugate mode pair
};

struct InitSpec {
    InitFamily family = InitFamily::AlgebraicTail;
    std::uint64_t seed = 1;
    int band = 8;                 // BandLimited
    double tail_exponent = 4.5;   // AlgebraicTail: beta, amplitude (1+w2)^{-beta/2}
    double witness_s = 4.0;       // WitnessTail
    double witness_eps = 0.05;    // WitnessTail
    bool kill_p0 = true;          // zero the n1 = 0 (strip p = 0) column
    double mean = 0.0;            // (0,0) coefficient before normalization
    double normalize_hm = 0.0;    // if > 0: rescale so ||theta0||_{H^m} equals this
    int norm_order = 4;           // the m used for normalization
    int mode1 = 1, mode2 = 0;     // SingleMode
    double amplitude = 1.0;
};

TorusField make_initial_torus(const TorusGrid& grid, const InitSpec& spec);
StripFieldX make_initial_strip(const StripGrid& grid, const InitSpec& spec);

// splitmix64; the per-mode phase hash
std::uint64_t hash_mix(std::uint64_t x);
double unit_uniform(std::uint64_t h);  // [0,1)

}  // namespace stratipm
