#pragma once

#include <functional>
#include <vector>

namespace stratipm {

// Tensor-product quadrature over xi in [-Xi_max, Xi_max]^2 built from
// geometrically graded Gauss-Legendre panels that accumulate toward both
// axes without ever placing a node on them. Handles the integrable
// |xi_1|^{-1/2+2eps} singularity of the sharpness witness.
class PlaneQuadrature {
  public:
    struct Params {
        double xi_max = 64.0;
        double inner = 1e-10;      // innermost panel edge (> 0)
        int nodes_per_panel = 10;  // Gauss order within each panel
    };

    explicit PlaneQuadrature(const Params& params);

    const Params& params() const { return params_; }
    // positive half-axis nodes/weights; the full axis is the symmetric mirror
    const std::vector<double>& half_nodes() const { return nodes_; }
    const std::vector<double>& half_weights() const { return weights_; }

    // integral over the full square; f evaluated at all four sign copies
    double integrate(const std::function<double(double, double)>& f) const;

    PlaneQuadrature refined() const;  // doubled Gauss order per panel
    PlaneQuadrature widened() const;  // doubled xi_max, same inner grading

  private:
    Params params_;
    std::vector<double> nodes_, weights_;
};

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace stratipm
