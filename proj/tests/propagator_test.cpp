#include <cmath>

#include "doctest.h"
#include "stratipm/analysis.hpp"
#include "stratipm/errors.hpp"
#include "stratipm/operators.hpp"
#include "stratipm/propagator.hpp"
#include "stratipm/random_field.hpp"

using namespace stratipm;

namespace {
TorusField random_torus(int K, std::uint64_t seed, bool mean = true) {
    InitSpec spec;
    spec.family = InitFamily::AlgebraicTail;
    spec.tail_exponent = 2.0;
    spec.kill_p0 = false;
    spec.seed = seed;
    spec.mean = mean ? 0.4 : 0.0;
    return make_initial_torus(TorusGrid(K), spec);
}
}  // namespace

TEST_CASE("semigroup factors on named modes") {
    TorusField f{TorusGrid(4)};
    f.real_valued = false;
    f.at(1, 1) = 1.0;
    f.at(0, 3) = 1.0;
    f.at(0, 0) = 1.0;
    SUBCASE("(1,1), N=1, t=ln 2 decays by 2^{-1/2}") {
        TorusField g = semigroup_apply(f, 1.0, std::log(2.0));
        CHECK(std::abs(g.at(1, 1)) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    }
    SUBCASE("(0,3) is a fixed point") {
        TorusField g = semigroup_apply(f, 3.0, 17.0);
        CHECK(std::abs(g.at(0, 3) - cplx{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("the mean decays like e^{-Nt}") {
        TorusField g = semigroup_apply(f, 2.0, 1.0);
        CHECK(std::abs(g.at(0, 0)) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    }
    SUBCASE("negative time is rejected") {
        CHECK_THROWS_AS(semigroup_apply(f, 1.0, -0.1), ParameterError);
    }
}

TEST_CASE("strip semigroup freezes the p = 0 column") {
    StripFieldX f{StripGrid(2, 3)};
    f.real_valued = false;
    f.at(0, 2) = 1.0;
    f.at(1, 2) = 1.0;
    StripFieldX g = semigroup_apply(f, 5.0, 2.0);
    CHECK(std::abs(g.at(0, 2) - cplx{1.0, 0.0}) < 1e-15);
    const double pi = 3.14159265358979323846;
    const double lam = 5.0 * 4.0 * pi * pi / (4.0 * pi * pi + pi * pi);
    CHECK(std::abs(g.at(1, 2)) == doctest::Approx(std::exp(-2.0 * lam)).epsilon(1e-13));
}

TEST_CASE("semigroup composition and contraction") {
    TorusField f = random_torus(6, 2);
    TorusField a = semigroup_apply(f, 2.0, 0.7 + 1.3);
    TorusField b = semigroup_apply(semigroup_apply(f, 2.0, 0.7), 2.0, 1.3);
    double worst = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) {
        const double scale = std::max(std::abs(f.c[i]), 1e-30);
        worst = std::max(worst, std::abs(a.c[i] - b.c[i]) / scale);
    }
    CHECK(worst < 1e-14);
    for (const NormSpec& s :
         {NormSpec::l2(), NormSpec::sobolev(3.0), NormSpec::l1w(1.0)})
        CHECK(norm(a, s) <= norm(f, s) * (1.0 + 1e-13));
}

TEST_CASE("duhamel source application is the semigroup by definition") {
    TorusField f = random_torus(5, 9);
    TorusField a = duhamel_source_apply(f, 3.0, 0.42);
    TorusField b = semigroup_apply(f, 3.0, 0.42);
    double worst = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) worst = std::max(worst, std::abs(a.c[i] - b.c[i]));
    CHECK(worst < 1e-15);
    TorusField z = duhamel_source_apply(f, 3.0, 0.0);
    for (size_t i = 0; i < z.c.size(); ++i) CHECK(z.c[i] == f.c[i]);
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(2, x, w);
    double s = 0.0;
    for (int i = 0; i < 2; ++i) s += w[static_cast<size_t>(i)] * x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    gauss_legendre(12, x, w);
    double s10 = 0.0, total = 0.0;
    for (int i = 0; i < 12; ++i) {
        s10 += w[static_cast<size_t>(i)] * std::pow(x[static_cast<size_t>(i)], 10);
        total += w[static_cast<size_t>(i)];
    }
    CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("plane quadrature") {
    SUBCASE("the Gaussian integrates to pi") {
        PlaneQuadrature quad({16.0, 1e-12, 10});
        const double v = quad.integrate([](double x, double y) { return std::exp(-x * x - y * y); });
        CHECK(v == doctest::Approx(3.14159265358979323846).epsilon(1e-11));
    }
    SUBCASE("weights are positive and nodes avoid the axes") {
        PlaneQuadrature quad({8.0, 1e-10, 6});
        for (double w : quad.half_weights()) CHECK(w > 0.0);
        for (double x : quad.half_nodes()) CHECK(x > 0.0);
    }
    SUBCASE("refinement at least halves the error of a smooth integral") {
        PlaneQuadrature coarse({12.0, 1e-10, 3});
        auto f = [](double x, double y) { return std::exp(-x * x - y * y) * std::cos(3.0 * x); };
        const double exact = 3.14159265358979323846 * std::exp(-9.0 / 4.0);
        const double e0 = std::abs(coarse.integrate(f) - exact);
        const double e1 = std::abs(coarse.refined().integrate(f) - exact);
        CHECK(e1 <= 0.5 * e0);
    }
    SUBCASE("bad parameters") {
        CHECK_THROWS_AS(PlaneQuadrature({-1.0, 1e-10, 8}), ParameterError);
        CHECK_THROWS_AS(PlaneQuadrature({1.0, 2.0, 8}), ParameterError);
    }
}

TEST_CASE("sharpness witness") {
    SUBCASE("point value and symmetry") {
        auto f = sharpness_witness({0.05, 1.0, 0, 100.0});
        CHECK(f(1.0, 0.0) == doctest::Approx(std::pow(2.0, -0.85)).epsilon(1e-14));
        CHECK(f(0.3, -0.7) == f(-0.3, 0.7));
        CHECK(f(0.3, 0.7) == f(-0.3, -0.7));
    }
    SUBCASE("H^s quadrature is Cauchy under domain doubling") {
        const WitnessSpec spec{0.05, 2.0, 0, 2e3};
        auto f = sharpness_witness(spec);
        PlaneQuadrature q1({2e3, 1e-14, 8});
        const double v1 = plane_hs_norm(f, spec.s, q1);
        const double v2 = plane_hs_norm(f, spec.s, q1.widened());
        const double v3 = plane_hs_norm(f, spec.s, q1.widened().widened());
        CHECK(std::abs(v3 - v2) < std::abs(v2 - v1));
        CHECK(std::abs(v2 - v1) / v1 < 0.1);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(sharpness_witness({-0.1, 2.0, 0, 10.0}), ParameterError);
        CHECK_THROWS_AS(sharpness_witness({0.05, 0.5, 0, 10.0}), ParameterError);
    }
}

TEST_CASE("plane norm quadrature") {
    auto gauss = [](double x, double y) { return std::exp(-x * x - y * y); };
    PlaneQuadrature quad({24.0, 1e-14, 10});
    SUBCASE("t = 0, j = 0, L1 kind is the plain L1 norm") {
        const double v = plane_norm_quadrature(gauss, 1.0, 0.0, PlaneNormKind::L1, 0, quad);
        CHECK(v == doctest::Approx(3.14159265358979323846).epsilon(1e-9));
    }
    SUBCASE("unconverged truncation raises a refinement error with the estimate") {
        PlaneQuadrature narrow({1.2, 1e-14, 10});
        try {
            plane_norm_quadrature(gauss, 1.0, 0.0, PlaneNormKind::L1, 0, narrow);
            FAIL("expected RefinementError");
        } catch (const RefinementError& e) {
            CHECK(e.achieved_estimate > 1e-6);
        }
    }
}

TEST_CASE("kernel decay ratio curves") {
    auto gauss = [](double x, double y) { return std::exp(-x * x - y * y); };
    PlaneQuadrature quad({24.0, 1e-14, 10});
    std::vector<double> times{0.0};
    for (int i = 0; i <= 18; ++i) times.push_back(std::pow(10.0, i / 3.0));
    DecayCurve ratio = kernel_decay_ratio(gauss, 1.0, times, 2.0, quad);
    SUBCASE("the t = 0 entry is the L1 norm over the Hs norm") {
        const double expect = plane_norm_quadrature(gauss, 1.0, 0.0, PlaneNormKind::L1, 0, quad) /
                              plane_hs_norm(gauss, 2.0, quad);
        CHECK(ratio.value.front() == doctest::Approx(expect).epsilon(1e-6));
    }
    SUBCASE("nonincreasing and bounded by 10 for the Gaussian family") {
        double prev = 1e300;
        for (double v : ratio.value) {
            CHECK(v <= prev * (1.0 + 1e-9));
            prev = v;
            CHECK(v <= 10.0);
        }
    }
    SUBCASE("the compensated curve decays at the Gaussian rate -1/4") {
        DecayCurve fitcurve;
        PlaneSemigroupSweep l1(gauss, quad, PlaneNormKind::L1, 0);
        for (size_t i = 1; i < times.size(); ++i)
            fitcurve.push(times[i], times[i], std::pow(1.0 + times[i], 0.25) * l1.value(1.0, times[i]));
        FitResult fit = fit_decay_exponent(fitcurve, 1e2, 1e6);
        CHECK(std::abs(fit.exponent + 0.25) < 0.03);
    }
}

TEST_CASE("witness slopes respect the lower-bound rates for j in {0,1,2}") {
    PlaneQuadrature quad({4e4, 1e-16, 8});
    const double eps = 0.05;
    std::vector<double> times;
    for (int i = 0; i < 13; ++i) times.push_back(std::pow(10.0, 2.0 + 0.25 * i));
    for (int j = 0; j <= 2; ++j) {
        auto f = sharpness_witness({eps, 2.0, j, 4e4});
        PlaneSemigroupSweep sweep(f, quad, PlaneNormKind::L1Weighted, j);
        DecayCurve c = sweep.curve(1.0, times);
        FitResult fit = fit_decay_exponent(c, 1e2, 1e5);
        CHECK(fit.exponent >= -(0.5 * j + 0.25 + eps) - 0.02);
    }
}

TEST_CASE("semigroup norm sweep agrees with the operator pipeline") {
    TorusField th = random_torus(12, 44, true);
    const double N = 2.0;
    std::vector<double> times{0.4, 1.7, 6.3};
    auto curves = semigroup_norm_sweep(th, N, times, 3);
    for (size_t i = 0; i < times.size(); ++i) {
        TorusField evolved = semigroup_apply(th, N, times[i]);
        TorusVelocity u = biot_savart(evolved);
        const double u_l2 = std::sqrt(std::pow(norm(u.u1, NormSpec::l2()), 2) +
                                      std::pow(norm(u.u2, NormSpec::l2()), 2));
        CHECK(curves["u_H0"].value[i] == doctest::Approx(u_l2).epsilon(1e-12));
        const double u2_h2 = norm(u.u2, NormSpec::sobolev(2.0));
        CHECK(curves["u2_H2"].value[i] == doctest::Approx(u2_h2).epsilon(1e-12));
        // theta_bar excludes the whole n1 = 0 column
        TorusField bar = evolved;
        for (int n2 = -12; n2 <= 12; ++n2) bar.at(0, n2) = cplx{0.0, 0.0};
        CHECK(curves["theta_bar_H1"].value[i] ==
              doctest::Approx(norm(bar, NormSpec::sobolev(1.0))).epsilon(1e-12));
    }
}
