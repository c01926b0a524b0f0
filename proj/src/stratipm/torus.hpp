#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "stratipm/array2.hpp"

namespace stratipm {

using cplx = std::complex<double>;

// Smallest 2^a 3^b 5^c 7^d >= n.
int fft_friendly_size(int n);

// Uniform collocation of the periodic square [0,L)^2 with spectral modes
// n in {-K..K}^2. Frequencies are xi = n/L, so the unit torus is L = 1 and a
// periodized plane box uses L > 1 with the same machinery.
struct TorusGrid {
    int modes = 0;       // K
    int phys = 0;        // M collocation points per axis, x_j = j L / M
    double length = 1.0; // L

    TorusGrid() = default;
    explicit TorusGrid(int K, int M = 0, double L = 1.0);

    int side() const { return 2 * modes + 1; }
    std::int64_t coeff_count() const { return static_cast<std::int64_t>(side()) * side(); }
    std::int64_t index(int n1, int n2) const {
        return static_cast<std::int64_t>(n1 + modes) * side() + (n2 + modes);
    }
    double xi1(int n1) const { return n1 / length; }
    double xi2(int n2) const { return n2 / length; }

    // 2/3-rule headroom: products need M >= ceil(3(2K+1)/2).
    int dealias_min_phys() const { return (3 * (2 * modes + 1) + 1) / 2; }
    bool dealias_capable() const { return phys >= dealias_min_phys(); }

    bool operator==(const TorusGrid& o) const {
        return modes == o.modes && phys == o.phys && length == o.length;
    }
};

// Real scalar field stored as the full complex coefficient square.
// Hermitian symmetry c(-n) = conj(c(n)) is maintained whenever real_valued.
struct TorusField {
    TorusGrid grid;
    std::vector<cplx> c;
    bool real_valued = true;

    TorusField() = default;
    explicit TorusField(const TorusGrid& g)
        : grid(g), c(static_cast<size_t>(g.coeff_count()), cplx{0.0, 0.0}) {}

    cplx& at(int n1, int n2) { return c[static_cast<size_t>(grid.index(n1, n2))]; }
    cplx at(int n1, int n2) const { return c[static_cast<size_t>(grid.index(n1, n2))]; }
};

double hermitian_residual(const TorusField& f);  // max |c(n) - conj(c(-n))|
void hermitian_symmetrize(TorusField& f);

// DFT engine bound to one grid; owns FFTW plans and staging buffers.
// evaluate() accepts fields with modes <= this grid's capacity, so a
// transformer on a padded grid performs the 3/2-rule product evaluation.
class TorusTransformer {
  public:
    explicit TorusTransformer(const TorusGrid& grid);
    ~TorusTransformer();
    TorusTransformer(const TorusTransformer&) = delete;
    TorusTransformer& operator=(const TorusTransformer&) = delete;

    const TorusGrid& grid() const { return grid_; }

    // Coefficients of the trigonometric interpolant of samples (phys x phys).
    TorusField forward(const RealArray2& samples);
    // Same, truncated onto `target` (used after dealiased products).
    TorusField forward_truncated(const RealArray2& samples, const TorusGrid& target);

    // Exact evaluation of the finite Fourier sum at the collocation points.
    // Checks Hermitian symmetry when the field claims to be real.
    RealArray2 inverse(const TorusField& f);
    // Evaluation without the realness check (internal pipelines).
    RealArray2 evaluate(const TorusField& f);

  private:
    TorusGrid grid_;
    std::unique_ptr<class Dft2> dft_;
};

// One-shot convenience wrappers over TorusTransformer.
TorusField torus_forward(const RealArray2& samples, const TorusGrid& grid);
RealArray2 torus_inverse(const TorusField& f);

// Dealiased pointwise product: evaluated on a 3/2-padded grid, truncated back.
TorusField physical_product(const TorusField& a, const TorusField& b);

// Padded companion grid used for products and nonlinear terms.
TorusGrid padded_grid(const TorusGrid& g);

}  // namespace stratipm
