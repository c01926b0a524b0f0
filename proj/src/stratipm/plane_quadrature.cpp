#include "stratipm/plane_quadrature.hpp"

#include <cmath>

#include "stratipm/errors.hpp"
#include "stratipm/par.hpp"

namespace stratipm {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<size_t>(n));
    w.resize(static_cast<size_t>(n));
    constexpr double kPi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = -z;
        w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

PlaneQuadrature::PlaneQuadrature(const Params& params) : params_(params) {
    if (params.xi_max <= 0.0 || params.inner <= 0.0 || params.inner >= params.xi_max)
        throw ParameterError("PlaneQuadrature: need 0 < inner < xi_max");
    if (params.nodes_per_panel < 2) throw ParameterError("PlaneQuadrature: nodes_per_panel < 2");

    std::vector<double> gx, gw;
    gauss_legendre(params.nodes_per_panel, gx, gw);

    // panel edges inner, 2*inner, 4*inner, ..., xi_max
    std::vector<double> edges{params.inner};
    while (edges.back() < params.xi_max)
        edges.push_back(std::min(2.0 * edges.back(), params.xi_max));

    // the innermost sliver [0, inner] as a single panel keeps weights positive
    // and contributes O(inner^{1/2}) for the witness singularity
    for (size_t e = 0; e + 1 <= edges.size(); ++e) {
        const double a = e == 0 ? 0.0 : edges[e - 1];
        const double b = edges[e];
        if (e + 1 == edges.size() && a >= b) break;
        for (int i = 0; i < params.nodes_per_panel; ++i) {
            nodes_.push_back(0.5 * (b - a) * gx[static_cast<size_t>(i)] + 0.5 * (a + b));
            weights_.push_back(0.5 * (b - a) * gw[static_cast<size_t>(i)]);
        }
    }
}

double PlaneQuadrature::integrate(const std::function<double(double, double)>& f) const {
    const std::int64_t n = static_cast<std::int64_t>(nodes_.size());
    return par::sum_indexed(n, [&](std::int64_t i) {
        const double x = nodes_[static_cast<size_t>(i)];
        const double wx = weights_[static_cast<size_t>(i)];
        double inner = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            const double y = nodes_[static_cast<size_t>(j)];
            const double wy = weights_[static_cast<size_t>(j)];
            inner += wy * (f(x, y) + f(-x, y) + f(x, -y) + f(-x, -y));
        }
        return wx * inner;
    });
}

PlaneQuadrature PlaneQuadrature::refined() const {
    Params p = params_;
    p.nodes_per_panel *= 2;
    return PlaneQuadrature(p);
}

PlaneQuadrature PlaneQuadrature::widened() const {
    Params p = params_;
    p.xi_max *= 2.0;
    return PlaneQuadrature(p);
}

}  // namespace stratipm
