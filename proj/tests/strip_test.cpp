#include <cmath>

#include "doctest.h"
#include "stratipm/errors.hpp"
#include "stratipm/operators.hpp"
#include "stratipm/random_field.hpp"
#include "stratipm/strip.hpp"

using namespace stratipm;

namespace {
constexpr double kPi = 3.14159265358979323846;

StripFieldX random_x(int P, int Q, std::uint64_t seed) {
    InitSpec spec;
    spec.family = InitFamily::AlgebraicTail;
    spec.tail_exponent = 0.5;
    spec.kill_p0 = false;
    spec.seed = seed;
    return make_initial_strip(StripGrid(P, Q), spec);
}

StripFieldY random_y(int P, int Q, std::uint64_t seed) {
    // draw a Y-field through derivative2 of an X-field plus a constant part
    StripFieldX x = random_x(P, Q, seed);
    StripFieldY y = derivative2(x);
    y.at(0, 0) = 0.4 * std::sqrt(2.0);
    return y;
}

double max_sample_diff(const RealArray2& a, const RealArray2& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}
}  // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(StripGrid(4, 0), ParameterError);
    const StripGrid g(4, 8);
    CHECK(g.vsegments >= g.qmodes + 1);
    CHECK(g.phys_x >= 9);
    CHECK(padded_grid(g).dealias_capable());
}

TEST_CASE("vertical quadrature makes both bases orthonormal to 1e-12") {
    const StripGrid g(0, 12);
    double worst_b = 0.0, worst_c = 0.0;
    for (int q = 0; q <= g.qmodes; ++q)
        for (int r = 0; r <= g.qmodes; ++r) {
            double ip_b = 0.0, ip_c = 0.0;
            for (int j = 0; j <= g.vsegments; ++j) {
                const double x2 = g.x2(j), w = g.weight(j);
                ip_b += w * strip_basis_b(q, x2) * strip_basis_b(r, x2);
                ip_c += w * strip_basis_c(q, x2) * strip_basis_c(r, x2);
            }
            const double expect = q == r ? 1.0 : 0.0;
            if (q >= 1 && r >= 1) worst_b = std::max(worst_b, std::abs(ip_b - expect));
            worst_c = std::max(worst_c, std::abs(ip_c - expect));
        }
    CHECK(worst_b < 1e-12);
    CHECK(worst_c < 1e-12);  // includes the normalized q = 0 element
}

TEST_CASE("basis elements transform to unit coefficients") {
    const StripGrid g(2, 6);
    SUBCASE("b_1 = cos(pi x2 / 2)") {
        RealArray2 samples(g.vnodes(), g.phys_x);
        for (int j = 0; j < g.vnodes(); ++j)
            for (int i = 0; i < g.phys_x; ++i) samples.at(j, i) = strip_basis_b(1, g.x2(j));
        StripFieldX f = strip_forward_x(samples, g);
        CHECK(std::abs(f.at(0, 1) - cplx{1.0, 0.0}) < 1e-13);
        double rest = 0.0;
        for (int p = -2; p <= 2; ++p)
            for (int q = 0; q <= 6; ++q)
                if (!(p == 0 && q == 1)) rest = std::max(rest, std::abs(f.at(p, q)));
        CHECK(rest < 1e-13);
    }
    SUBCASE("the q = 0 basis element of Y") {
        RealArray2 samples(g.vnodes(), g.phys_x);
        for (double& v : samples.v) v = strip_basis_c(0, 0.0);  // constant 1/sqrt(2)
        StripFieldY f = strip_forward_y(samples, g);
        CHECK(std::abs(f.at(0, 0) - cplx{1.0, 0.0}) < 1e-13);
    }
    SUBCASE("the constant function carries coefficient sqrt(2)") {
        RealArray2 samples(g.vnodes(), g.phys_x);
        for (double& v : samples.v) v = 1.0;
        StripFieldY f = strip_forward_y(samples, g);
        CHECK(std::abs(f.at(0, 0) - cplx{std::sqrt(2.0), 0.0}) < 1e-13);
    }
}

TEST_CASE("round trips to 1e-12 and zero maps to zero") {
    const int P = 6, Q = 10;
    SUBCASE("X") {
        StripFieldX f = random_x(P, Q, 17);
        StripTransformer t(f.grid);
        RealArray2 phys = t.inverse_x(f);
        StripFieldX back = t.forward_x(phys);
        double worst = 0.0;
        for (size_t i = 0; i < f.c.size(); ++i) worst = std::max(worst, std::abs(f.c[i] - back.c[i]));
        CHECK(worst < 1e-12);
    }
    SUBCASE("Y") {
        StripFieldY f = random_y(P, Q, 18);
        StripTransformer t(f.grid);
        RealArray2 phys = t.inverse_y(f);
        StripFieldY back = t.forward_y(phys);
        double worst = 0.0;
        for (size_t i = 0; i < f.c.size(); ++i) worst = std::max(worst, std::abs(f.c[i] - back.c[i]));
        CHECK(worst < 1e-12);
    }
    SUBCASE("zero coefficients reconstruct the zero field") {
        StripFieldX z{StripGrid(3, 4)};
        RealArray2 phys = strip_inverse_x(z);
        for (double v : phys.v) CHECK(v == 0.0);
    }
}

TEST_CASE("Parseval on the strip") {
    StripFieldX f = random_x(5, 9, 23);
    StripTransformer t(f.grid);
    RealArray2 phys = t.inverse_x(f);
    double quad = 0.0;
    for (int j = 0; j < phys.n0; ++j) {
        const double w = f.grid.weight(j);
        for (int i = 0; i < phys.n1; ++i) quad += w * phys.at(j, i) * phys.at(j, i) / f.grid.phys_x;
    }
    CHECK(std::sqrt(quad) == doctest::Approx(norm(f, NormSpec::l2())).epsilon(1e-12));
}

TEST_CASE("X reconstructions vanish on the boundary") {
    StripFieldX f = random_x(4, 8, 29);
    CHECK(boundary_trace_max(f) < 1e-10);
}

TEST_CASE("wrong-space samples raise a parity error") {
    const StripGrid g(2, 5);
    RealArray2 ones(g.vnodes(), g.phys_x);
    for (double& v : ones.v) v = 1.0;  // nonzero trace: not X-type
    CHECK_THROWS_AS(strip_forward_x(ones, g), ParityError);
    // even cosine c_2 = cos(pi x2): Y-type, fails in X as well
    RealArray2 c2(g.vnodes(), g.phys_x);
    for (int j = 0; j < g.vnodes(); ++j)
        for (int i = 0; i < g.phys_x; ++i) c2.at(j, i) = strip_basis_c(2, g.x2(j));
    CHECK_THROWS_AS(strip_forward_x(c2, g), ParityError);
    CHECK_NOTHROW(strip_forward_y(c2, g));
}

TEST_CASE("product parity algebra") {
    const StripGrid g(3, 8);
    SUBCASE("multiplying by the constant function is the identity (X*Y -> X)") {
        StripFieldX b2{g};
        b2.at(0, 2) = 1.0;
        StripFieldY one{g};
        one.at(0, 0) = std::sqrt(2.0);  // the function 1
        StripFieldX p = physical_product(b2, one);
        CHECK(std::abs(p.at(0, 2) - cplx{1.0, 0.0}) < 1e-13);
        double rest = 0.0;
        for (int pp = -3; pp <= 3; ++pp)
            for (int q = 0; q <= 8; ++q)
                if (!(pp == 0 && q == 2)) rest = std::max(rest, std::abs(p.at(pp, q)));
        CHECK(rest < 1e-13);
    }
    SUBCASE("b1 * b1 expands into the two cosine modes (X*X -> Y)") {
        StripFieldX b1{g};
        b1.at(0, 1) = 1.0;
        StripFieldY p = physical_product(b1, b1);
        // cos^2(pi x2/2) = 1/2 + cos(pi x2)/2 = (1/sqrt2) c0 + (1/2) c2
        CHECK(std::abs(p.at(0, 0) - cplx{1.0 / std::sqrt(2.0), 0.0}) < 1e-13);
        CHECK(std::abs(p.at(0, 2) - cplx{0.5, 0.0}) < 1e-13);
        CHECK(std::abs(p.at(0, 1)) < 1e-13);
    }
    SUBCASE("random X*X against a direct quadrature oracle") {
        StripFieldX a = random_x(3, 8, 41);
        StripFieldX b = random_x(3, 8, 42);
        StripFieldY p = physical_product(a, b);
        // oracle: evaluate both factors by explicit basis sums on a fine
        // trapezoid grid, multiply pointwise, project by explicit quadrature
        const int Mh = 32, Mv = 40;
        double worst = 0.0;
        for (int pp = -3; pp <= 3; ++pp)
            for (int q = 0; q <= 8; ++q) {
                cplx acc{0.0, 0.0};
                for (int j = 0; j <= Mv; ++j) {
                    const double x2 = -1.0 + 2.0 * j / Mv;
                    const double w2 = (j == 0 || j == Mv) ? 1.0 / Mv : 2.0 / Mv;
                    for (int i = 0; i < Mh; ++i) {
                        const double x1 = static_cast<double>(i) / Mh;
                        cplx va{0.0, 0.0}, vb{0.0, 0.0};
                        for (int pa = -3; pa <= 3; ++pa)
                            for (int qa = 1; qa <= 8; ++qa) {
                                const cplx e = std::polar(1.0, 2.0 * kPi * pa * x1);
                                va += a.at(pa, qa) * e * strip_basis_b(qa, x2);
                                vb += b.at(pa, qa) * e * strip_basis_b(qa, x2);
                            }
                        const double prod = va.real() * vb.real();
                        acc += prod * std::conj(std::polar(1.0, 2.0 * kPi * pp * x1)) *
                               strip_basis_c(q, x2) * (w2 / Mh);
                    }
                }
                worst = std::max(worst, std::abs(acc - p.at(pp, q)));
            }
        CHECK(worst < 1e-10);
    }
    SUBCASE("spectral l1 product bound") {
        // sum |F_b(fg)| <= (sum |F_b f|)(sum |F_c g|) on random pairs
        for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
            StripFieldX f = random_x(3, 8, seed);
            StripFieldY gfield = random_y(3, 8, seed + 50);
            StripFieldX fg = physical_product(f, gfield);
            double lhs = 0.0, f1 = 0.0, g1 = 0.0;
            for (size_t i = 0; i < fg.c.size(); ++i) lhs += std::abs(fg.c[i]);
            for (size_t i = 0; i < f.c.size(); ++i) f1 += std::abs(f.c[i]);
            for (size_t i = 0; i < gfield.c.size(); ++i) g1 += std::abs(gfield.c[i]);
            CHECK(lhs <= f1 * g1 * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("derivatives") {
    const StripGrid g(3, 6);
    SUBCASE("d2 b_1 = (pi/2) c_1") {
        StripFieldX b1{g};
        b1.at(0, 1) = 1.0;
        StripFieldY d = derivative2(b1);
        CHECK(std::abs(d.at(0, 1) - cplx{0.5 * kPi, 0.0}) < 1e-14);
        // and the function it reconstructs is -(pi/2) sin(pi x2 / 2)
        RealArray2 phys = strip_inverse_y(d);
        for (int j = 0; j < phys.n0; ++j)
            CHECK(phys.at(j, 0) ==
                  doctest::Approx(-0.5 * kPi * std::sin(0.5 * kPi * g.x2(j))).epsilon(1e-12));
    }
    SUBCASE("d1 d2 = d2 d1 on random fields") {
        StripFieldX f = random_x(3, 6, 77);
        StripFieldY a = derivative2(derivative1(f));
        StripFieldY b = derivative1(derivative2(f));
        double worst = 0.0;
        for (size_t i = 0; i < a.c.size(); ++i) worst = std::max(worst, std::abs(a.c[i] - b.c[i]));
        CHECK(worst < 1e-12);
    }
    SUBCASE("d2 round trip X -> Y -> X is -(pi q/2)^2") {
        StripFieldX f = random_x(2, 5, 78);
        StripFieldX dd = derivative2(derivative2(f));
        for (int q = 1; q <= 5; ++q) {
            const double mult = -0.25 * kPi * kPi * q * q;
            CHECK(std::abs(dd.at(1, q) - mult * f.at(1, q)) < 1e-12);
        }
    }
}

TEST_CASE("Hermitian flag is checked on real strip fields") {
    StripFieldX f = random_x(3, 5, 91);
    f.at(1, 2) += cplx{0.2, 0.4};
    CHECK_THROWS_AS(strip_inverse_x(f), ConsistencyError);
}
