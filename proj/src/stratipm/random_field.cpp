#include "stratipm/random_field.hpp"

#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/operators.hpp"

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::uint64_t hash_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {
double mode_phase(std::uint64_t seed, int a, int b) {
    std::uint64_t h = hash_mix(seed ^ hash_mix(static_cast<std::uint64_t>(
                                   (static_cast<std::int64_t>(a) << 32) ^
                                   static_cast<std::uint32_t>(b))));
    return 2.0 * kPi * unit_uniform(h);
}

double tail_amp(const InitSpec& spec, double xi1, double w2) {
    switch (spec.family) {
        case InitFamily::BandLimited:
            return 1.0;
        case InitFamily::AlgebraicTail:
            return std::pow(1.0 + w2, -0.5 * spec.tail_exponent);
        case InitFamily::WitnessTail: {
            if (xi1 == 0.0) return 0.0;
            const double a = -0.5 + 2.0 * spec.witness_eps;
            const double b = -(0.5 * spec.witness_s + 0.25 + 2.0 * spec.witness_eps);
            return std::pow(std::abs(xi1), a) * std::pow(1.0 + w2, b);
        }
        case InitFamily::SingleMode:
            return 0.0;  // handled separately
    }
    return 0.0;
}
}  // namespace

TorusField make_initial_torus(const TorusGrid& grid, const InitSpec& spec) {
    TorusField f(grid);
    const int K = grid.modes;
    if (spec.family == InitFamily::SingleMode) {
        if (std::abs(spec.mode1) > K || std::abs(spec.mode2) > K)
            throw ParameterError("make_initial_torus: single mode outside the grid");
        f.at(spec.mode1, spec.mode2) = 0.5 * spec.amplitude;
        f.at(-spec.mode1, -spec.mode2) = 0.5 * spec.amplitude;
        f.at(0, 0) += spec.mean;
        return f;
    }
    for (int n1 = 0; n1 <= K; ++n1)
        for (int n2 = -K; n2 <= K; ++n2) {
            if (n1 == 0 && n2 <= 0) continue;
            if (spec.kill_p0 && n1 == 0) continue;
            if (spec.family == InitFamily::BandLimited &&
                n1 * n1 + n2 * n2 > spec.band * spec.band)
                continue;
            const double x1 = grid.xi1(n1), x2 = grid.xi2(n2);
            const double amp = spec.amplitude * tail_amp(spec, x1, x1 * x1 + x2 * x2);
            if (amp == 0.0) continue;
            const double ph = mode_phase(spec.seed, n1, n2);
            const cplx v = amp * cplx{std::cos(ph), std::sin(ph)};
            f.at(n1, n2) = v;
            f.at(-n1, -n2) = std::conj(v);
        }
    f.at(0, 0) = cplx{spec.mean, 0.0};
    if (spec.normalize_hm > 0.0) {
        const double cur = norm(f, NormSpec::sobolev(spec.norm_order));
        if (cur > 0.0)
            for (cplx& z : f.c) z *= spec.normalize_hm / cur;
    }
    return f;
}

StripFieldX make_initial_strip(const StripGrid& grid, const InitSpec& spec) {
    StripFieldX f(grid);
    if (spec.family == InitFamily::SingleMode) {
        if (std::abs(spec.mode1) > grid.pmodes || spec.mode2 < 1 || spec.mode2 > grid.qmodes)
            throw ParameterError("make_initial_strip: single mode outside the grid");
        f.at(spec.mode1, spec.mode2) = 0.5 * spec.amplitude;
        f.at(-spec.mode1, spec.mode2) = 0.5 * spec.amplitude;
        return f;
    }
    for (int p = 0; p <= grid.pmodes; ++p)
        for (int q = 1; q <= grid.qmodes; ++q) {
            if (spec.kill_p0 && p == 0) continue;
            const double h = 2.0 * kPi * p, v = 0.5 * kPi * q;
            const double w2 = h * h + v * v;
            if (spec.family == InitFamily::BandLimited && w2 > std::pow(2.0 * kPi * spec.band, 2))
                continue;
            const double amp = spec.amplitude * tail_amp(spec, h, w2);
            if (amp == 0.0) continue;
            const double ph = mode_phase(spec.seed, p, q);
            const cplx val = amp * cplx{std::cos(ph), std::sin(ph)};
            f.at(p, q) = val;
            if (p > 0) f.at(-p, q) = std::conj(val);
            // p = 0 columns of a real field must be real
            if (p == 0) f.at(0, q) = cplx{amp * std::cos(ph), 0.0};
        }
    if (spec.normalize_hm > 0.0) {
        const double cur = norm(f, NormSpec::sobolev(spec.norm_order));
        if (cur > 0.0)
            for (cplx& z : f.c) z *= spec.normalize_hm / cur;
    }
    return f;
}

}  // namespace stratipm
