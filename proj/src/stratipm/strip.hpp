#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "stratipm/array2.hpp"

namespace stratipm {

using cplx = std::complex<double>;

// Horizontally periodic strip T x [-1,1]. Horizontal modes p in {-P..P} over
// x1 in [0,1); vertical spectral index q against the sine/cosine pair
//
//   b_q(x2) = sin(pi q x2 / 2)  (q even),   cos(pi q x2 / 2)  (q odd)
//   c_q(x2) = cos(pi q x2 / 2)  (q even),  -sin(pi q x2 / 2)  (q odd)
//
// with c_0 stored normalized (1/sqrt 2) so that both families are orthonormal
// in L2(-1,1). X-type fields carry b-coefficients (q >= 1, vanish on the
// boundary), Y-type carry c-coefficients (q >= 0, odd-derivative traces
// vanish). Vertical collocation is uniform including both endpoints,
// x2_j = -1 + 2j/Mv, with trapezoid weights: exact for the cosine-type
// integrands every transform in this file produces, up to index 2*Mv - 1.
struct StripGrid {
    int pmodes = 0;      // P
    int qmodes = 0;      // Q
    int phys_x = 0;      // Mh, collocation count on T
    int vsegments = 0;   // Mv, vertical nodes are j = 0..Mv

    StripGrid() = default;
    StripGrid(int P, int Q, int Mh = 0, int Mv = 0);

    int prows() const { return 2 * pmodes + 1; }
    int qcols() const { return qmodes + 1; }
    std::int64_t coeff_count() const { return static_cast<std::int64_t>(prows()) * qcols(); }
    std::int64_t index(int p, int q) const {
        return static_cast<std::int64_t>(p + pmodes) * qcols() + q;
    }
    int vnodes() const { return vsegments + 1; }
    double x2(int j) const { return -1.0 + 2.0 * j / vsegments; }
    double weight(int j) const {
        return (j == 0 || j == vsegments) ? 1.0 / vsegments : 2.0 / vsegments;
    }

    int dealias_min_phys_x() const { return 3 * pmodes + 2; }
    int dealias_min_vsegments() const { return (3 * qmodes + 2) / 2; }
    bool dealias_capable() const {
        return phys_x >= dealias_min_phys_x() && vsegments >= dealias_min_vsegments();
    }

    bool operator==(const StripGrid& o) const {
        return pmodes == o.pmodes && qmodes == o.qmodes && phys_x == o.phys_x &&
               vsegments == o.vsegments;
    }
};

double strip_basis_b(int q, double x2);
double strip_basis_c(int q, double x2);  // q = 0 gives 1/sqrt(2)

struct StripFieldX {
    StripGrid grid;
    std::vector<cplx> c;  // q = 0 entries unused, kept zero
    bool real_valued = true;

    StripFieldX() = default;
    explicit StripFieldX(const StripGrid& g)
        : grid(g), c(static_cast<size_t>(g.coeff_count()), cplx{0.0, 0.0}) {}
    cplx& at(int p, int q) { return c[static_cast<size_t>(grid.index(p, q))]; }
    cplx at(int p, int q) const { return c[static_cast<size_t>(grid.index(p, q))]; }
};

struct StripFieldY {
    StripGrid grid;
    std::vector<cplx> c;
    bool real_valued = true;

    StripFieldY() = default;
    explicit StripFieldY(const StripGrid& g)
        : grid(g), c(static_cast<size_t>(g.coeff_count()), cplx{0.0, 0.0}) {}
    cplx& at(int p, int q) { return c[static_cast<size_t>(grid.index(p, q))]; }
    cplx at(int p, int q) const { return c[static_cast<size_t>(grid.index(p, q))]; }
};

// Quadrature/DFT engine bound to one grid; samples are (Mv+1) x Mh row-major,
// rows are vertical nodes. A transformer on a padded grid (same P, Q, larger
// phys) performs the dealiased product evaluation.
class StripTransformer {
  public:
    explicit StripTransformer(const StripGrid& grid);
    ~StripTransformer();
    StripTransformer(const StripTransformer&) = delete;
    StripTransformer& operator=(const StripTransformer&) = delete;

    const StripGrid& grid() const { return grid_; }

    // parity_check: reject samples whose projection residual exceeds tol
    // (signals the wrong space).
    StripFieldX forward_x(const RealArray2& samples, bool parity_check = true,
                          double parity_tol = 1e-8);
    StripFieldY forward_y(const RealArray2& samples, bool parity_check = true,
                          double parity_tol = 1e-8);

    RealArray2 inverse_x(const StripFieldX& f);
    RealArray2 inverse_y(const StripFieldY& f);

    RealArray2 evaluate_x(const StripFieldX& f);  // no realness check
    RealArray2 evaluate_y(const StripFieldY& f);

  private:
    StripGrid grid_;
    std::vector<double> beval_, ceval_;    // (Mv+1) x (Q+1), basis at nodes
    std::vector<double> bquad_, cquad_;    // (Q+1) x (Mv+1), weights included
    std::unique_ptr<class Dft1Rows> rows_;
    std::vector<cplx> hbuf_;               // (Mv+1) x prows staging
    std::vector<cplx> tbuf_;               // (Q+1) x prows staging

    template <class Field>
    Field forward_impl(const RealArray2& samples, bool is_x);
    template <class Field>
    RealArray2 evaluate_impl(const Field& f, bool is_x);
};

StripFieldX strip_forward_x(const RealArray2& samples, const StripGrid& grid);
StripFieldY strip_forward_y(const RealArray2& samples, const StripGrid& grid);
RealArray2 strip_inverse_x(const StripFieldX& f);
RealArray2 strip_inverse_y(const StripFieldY& f);

StripGrid padded_grid(const StripGrid& g);

// Dealiased products, routed by the vertical parity algebra:
// X*Y -> X, X*X -> Y, Y*Y -> Y.
StripFieldX physical_product(const StripFieldX& a, const StripFieldY& b);
StripFieldY physical_product(const StripFieldX& a, const StripFieldX& b);
StripFieldY physical_product(const StripFieldY& a, const StripFieldY& b);

// max |f| over the two boundary rows of the reconstruction
double boundary_trace_max(const StripFieldX& f);

double hermitian_residual_p(const std::vector<cplx>& c, const StripGrid& g);

}  // namespace stratipm
