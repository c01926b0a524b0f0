#include "stratipm/stratification.hpp"

#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/fft.hpp"

namespace stratipm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double profile_value(const ProfileSpec& spec, double x2, double length) {
    switch (spec.kind) {
        case ProfileKind::Zero:
            return 0.0;
        case ProfileKind::CosineMode:
            return spec.amplitude * std::cos(2.0 * kPi * spec.mode * x2 / length);
        case ProfileKind::GaussianBump: {
            // evaluate the periodization's nearest image
            double d = x2 - spec.center;
            d -= length * std::round(d / length);
            return spec.amplitude * std::exp(-d * d / (2.0 * spec.width * spec.width));
        }
    }
    return 0.0;
}

double SampledProfile::weighted_l1(double order, double length) const {
    const int K = (static_cast<int>(spectrum.size()) - 1) / 2;
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) {
        const double xi = k / length;
        acc += std::pow(1.0 + xi * xi, 0.5 * order) *
               std::abs(spectrum[static_cast<size_t>(k + K)]);
    }
    return acc;
}

SampledProfile sample_profile(const ProfileSpec& spec, const TorusGrid& grid, double N) {
    if (spec.kind == ProfileKind::GaussianBump && spec.width <= 0.0)
        throw ParameterError("sample_profile: width must be > 0");
    const int M = grid.phys;
    SampledProfile out;
    out.samples.resize(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double x2 = grid.length * j / M;
        const double v = profile_value(spec, x2, grid.length);
        if (!std::isfinite(v)) throw ParameterError("sample_profile: non-finite sigma sample");
        out.samples[static_cast<size_t>(j)] = v;
        out.sup = std::max(out.sup, std::abs(v));
    }
    out.exceeds_half_n = out.sup > 0.5 * N;

    // 1-D spectrum through a single row transform
    Dft1Rows dft(1, M);
    for (int j = 0; j < M; ++j) dft.data()[j] = cplx{out.samples[static_cast<size_t>(j)], 0.0};
    dft.forward();
    const int K = grid.modes;
    out.spectrum.assign(static_cast<size_t>(2 * K + 1), cplx{0.0, 0.0});
    for (int k = -K; k <= K; ++k) {
        const int ik = (k % M + M) % M;
        out.spectrum[static_cast<size_t>(k + K)] = dft.data()[ik] / static_cast<double>(M);
    }
    return out;
}

}  // namespace stratipm
