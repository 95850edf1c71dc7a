#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "reebdbar/quadrature.hpp"

using namespace reebdbar;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("quad spec validation") {
    CHECK_THROWS_AS((PolarQuadSpec{0, 8, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PolarQuadSpec{8, 0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PolarQuadSpec{8, 8, 0.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((PolarQuadSpec{1, 1, 0.5}.validate()));
}

// Indicator of the unit disc: the transform is zbar inside and 1/z outside.
// The integrand jumps at the boundary, so the rule is first order here; the
// error must shrink monotonically under refinement.
TEST_CASE("cauchy transform of the disc indicator") {
    auto ind = [](Complex xi, double) -> Complex {
        return std::abs(xi) <= 1.0 ? Complex{1.0, 0.0} : Complex{};
    };
    const Complex inside{0.4, 0.3};
    const Complex outside{1.7, -0.6};
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        const PolarQuadSpec spec{4 * n, n, 4.0};
        errs.push_back(
            std::abs(cauchy_transform(ind, 0.0, inside, spec, 1.0) -
                     std::conj(inside)));
    }
    CHECK(errs[0] > errs[1]);
    CHECK(errs[1] > errs[2]);
    CHECK(errs[2] < 1e-3);

    const PolarQuadSpec spec{1024, 256, 4.0};
    CHECK(std::abs(cauchy_transform(ind, 0.0, outside, spec, 1.0) -
                   1.0 / outside) < 1e-3);
}

// Gaussian closed form: the transform of exp(-|xi|^2) is (1 - exp(-|z|^2))/z.
// Smooth integrand, so the product rule is accurate at moderate sizes; the
// support is only numerically compact, cut where the tail is ~1e-16.
TEST_CASE("cauchy transform of a gaussian") {
    auto gauss = [](Complex xi, double) -> Complex {
        return std::exp(-std::norm(xi));
    };
    const PolarQuadSpec spec{512, 128, 8.0};
    for (Complex z : {Complex{0.7, 0.3}, Complex{-0.2, 1.1}}) {
        const Complex want = (1.0 - std::exp(-std::norm(z))) / z;
        // Radial rule is O(h^2) on this integrand: ~6e-6 at this spacing.
        CHECK(std::abs(cauchy_transform(gauss, 0.0, z, spec, 6.0) - want) <
              2e-5);
    }
}

TEST_CASE("cauchy transform coverage and argument checks") {
    auto one = [](Complex, double) -> Complex { return {1.0, 0.0}; };
    const PolarQuadSpec spec{32, 32, 2.0};
    CHECK_THROWS_AS(cauchy_transform(one, 0.0, Complex{1.5, 0.0}, spec, 1.0),
                    CoverageError);
    CHECK_THROWS_AS(cauchy_transform(one, 0.0, Complex{}, spec, 0.0),
                    std::invalid_argument);
    CHECK_NOTHROW(cauchy_transform(one, 0.0, Complex{0.9, 0.0}, spec, 1.0));
}

// dbar of the shell transform recovers the shell integrand: T is a right
// inverse of d/dzbar.  The finite-difference probe differentiates the
// quadrature error along with the transform, hence the loose tolerance.
TEST_CASE("h_partial solves the layer equation") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    const FoliationParams params{0.5};
    const auto coeff = bind(f.coeff, params);
    const PolarQuadSpec spec{256, 256, 8.0};
    const double step = 1e-4;

    for (int j : {0, 1}) {
        for (Complex z : {Complex{1.6, 0.9}, Complex{0.4, -0.2}}) {
            const double t = 0.35;
            auto h = [&](Complex w, double tt) {
                return h_partial(f, j, w, tt, fam, spec);
            };
            const Complex dx = (h(z + step, t) - h(z - step, t)) / (2.0 * step);
            const Complex dy = (h(z + Complex{0, step}, t) -
                                h(z - Complex{0, step}, t)) / (2.0 * step);
            const Complex dbar = 0.5 * (dx + Complex{0, 1} * dy);
            const Complex want = psi(fam, j, z) * coeff(z, t);
            CHECK(std::abs(dbar - want) < 2e-4);
        }
    }
}

TEST_CASE("h_partial against a hand-built area integral") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    const FoliationParams params{0.5};
    const auto coeff = bind(f.coeff, params);
    const double t = 0.7;

    // At z = 0 the kernel is 1/xi and the support annulus keeps it smooth:
    // integrate psi_1 f / xi directly on the annulus window.
    const Annulus ann = support_annulus(fam, 1);
    const PolarQuadSpec spec{512, 256, 4.0};
    const Complex via_window = area_integral(
        [&](Complex xi) {
            const double cut = psi(fam, 1, xi);
            return cut == 0.0 ? Complex{} : cut * coeff(xi, t) / xi;
        },
        spec, ann.inner, ann.outer);
    const Complex via_transform = h_partial(f, 1, Complex{}, t, fam, spec);
    CHECK(std::abs(via_window - via_transform) < 1e-6);
}

TEST_CASE("h_partial rejects negative shells") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    CHECK_THROWS_AS(
        h_partial(f, -1, Complex{}, 0.0, fam, PolarQuadSpec{32, 32, 4.0}),
        std::invalid_argument);
}

TEST_CASE("contour coefficients of a polynomial are exact") {
    auto h = [](Complex xi, double) {
        return 3.0 + 2.0 * xi + 5.0 * xi * xi * xi;
    };
    const Complex c{};
    CHECK(std::abs(contour_coefficient(h, 0.0, c, 0.8, 0,
                                       CoefficientKind::taylor) -
                   3.0) < 1e-13);
    CHECK(std::abs(contour_coefficient(h, 0.0, c, 0.8, 1,
                                       CoefficientKind::taylor) -
                   2.0) < 1e-13);
    CHECK(std::abs(contour_coefficient(h, 0.0, c, 0.8, 2,
                                       CoefficientKind::taylor)) < 1e-13);
    CHECK(std::abs(contour_coefficient(h, 0.0, c, 0.8, 3,
                                       CoefficientKind::taylor) -
                   5.0) < 1e-13);

    // An off-center expansion sees the recentered polynomial.
    auto shifted = [](Complex xi, double) {
        const Complex d = xi - Complex{0.3, -0.1};
        return d * d;
    };
    CHECK(std::abs(contour_coefficient(shifted, 0.0, Complex{0.3, -0.1}, 0.5,
                                       2, CoefficientKind::taylor) -
                   1.0) < 1e-13);
}

TEST_CASE("laurent coefficient detects the simple pole") {
    auto pole = [](Complex xi, double) { return 1.0 / xi; };
    const Complex b1 = contour_coefficient(pole, 0.0, Complex{}, 0.6, 1,
                                           CoefficientKind::laurent);
    CHECK(std::abs(b1 - 1.0) < 1e-14);
    auto entire = [](Complex xi, double) { return std::exp(xi); };
    CHECK(std::abs(contour_coefficient(entire, 0.0, Complex{}, 0.6, 1,
                                       CoefficientKind::laurent)) < 1e-14);
}

TEST_CASE("contour coefficient argument checks") {
    auto h = [](Complex, double) -> Complex { return {1.0, 0.0}; };
    CHECK_THROWS_AS(contour_coefficient(h, 0.0, Complex{}, 0.0, 0,
                                        CoefficientKind::taylor),
                    std::invalid_argument);
    CHECK_THROWS_AS(contour_coefficient(h, 0.0, Complex{}, 1.0, -1,
                                        CoefficientKind::taylor),
                    std::invalid_argument);
    CHECK_THROWS_AS(contour_coefficient(h, 0.0, Complex{}, 1.0, 0,
                                        CoefficientKind::laurent),
                    std::invalid_argument);
}

TEST_CASE("taylor_coefficients expands sin(xi)/xi") {
    auto sinc = [](Complex xi, double) -> Complex {
        return xi == Complex{} ? Complex{1.0, 0.0} : std::sin(xi) / xi;
    };
    const auto c = taylor_coefficients(sinc, 0.0, Complex{}, 0.9, 4);
    CHECK(std::abs(c[0] - 1.0) < 1e-12);
    CHECK(std::abs(c[1]) < 1e-12);
    CHECK(std::abs(c[2] + 1.0 / 6.0) < 1e-12);
    CHECK(std::abs(c[3]) < 1e-12);
    CHECK(std::abs(c[4] - 1.0 / 120.0) < 1e-12);

    // Single-pass extraction agrees with the one-coefficient routine.
    for (int n = 0; n <= 4; ++n) {
        const Complex one = contour_coefficient(sinc, 0.0, Complex{}, 0.9, n,
                                                CoefficientKind::taylor);
        CHECK(std::abs(c[n] - one) < 1e-14);
    }
}

TEST_CASE("area integral basics") {
    const PolarQuadSpec spec{128, 64, 2.0};
    // Constant: the midpoint rule integrates r dr exactly, so the value is
    // -(area)/pi to roundoff.
    const Complex c = area_integral([](Complex) { return Complex{1.0, 0.0}; },
                                    spec);
    CHECK(std::abs(c - Complex{-4.0, 0.0}) < 1e-12);
    // Odd integrand: cancels ring by ring.
    const Complex odd = area_integral([](Complex xi) { return xi; }, spec);
    CHECK(std::abs(odd) < 1e-13);
    // A radial window restricted to where the integrand lives changes
    // nothing but the node placement.
    auto annular = [](Complex xi) -> Complex {
        const double r = std::abs(xi);
        return (r >= 0.5 && r <= 1.5) ? Complex{0.0, 2.0} : Complex{};
    };
    const Complex full = area_integral(annular, PolarQuadSpec{4096, 16, 2.0});
    const Complex windowed =
        area_integral(annular, PolarQuadSpec{4096, 16, 2.0}, 0.5, 1.5);
    CHECK(std::abs(full - windowed) < 1e-3);
    CHECK(std::abs(windowed - Complex{0.0, -4.0}) < 1e-12);
}

TEST_CASE("area integral window validation") {
    const PolarQuadSpec spec{16, 16, 2.0};
    auto one = [](Complex) -> Complex { return {1.0, 0.0}; };
    CHECK_THROWS_AS(area_integral(one, spec, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(area_integral(one, spec, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(area_integral(one, spec, 0.0, 2.5), CoverageError);
}

TEST_CASE("annulus sweep agrees with the direct shell transform") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    const double t = 0.4;
    const AnnulusSweep sweep = annulus_sweep(f, 1, fam, t, 512, 256);
    CHECK(sweep.inner == 1.25);
    CHECK(sweep.outer == 3.5);

    const PolarQuadSpec spec{512, 256, 8.0};
    for (Complex z : {Complex{0.3, 0.2}, Complex{-0.8, 0.4}, Complex{}}) {
        const Complex direct = h_partial(f, 1, z, t, fam, spec);
        CHECK(std::abs(sweep.transform_at(z) - direct) < 1e-6);
    }
}

TEST_CASE("moments reproduce the sweep transform inside the annulus") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    const AnnulusSweep sweep = annulus_sweep(f, 1, fam, 0.15, 128, 128);
    const auto a = sweep.moments(64);
    for (Complex z : {Complex{0.35, 0.1}, Complex{-0.2, -0.3}}) {
        Complex horner{};
        for (auto it = a.rbegin(); it != a.rend(); ++it)
            horner = horner * z + *it;
        CHECK(std::abs(horner - sweep.transform_at(z)) < 1e-12);
    }
}

TEST_CASE("moments agree with contour extraction from the transform") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    const AnnulusSweep sweep = annulus_sweep(f, 1, fam, -0.6, 128, 128);
    const auto a = sweep.moments(6);
    auto h = [&](Complex z, double) { return sweep.transform_at(z); };
    // Two routes to the same coefficients: kernel expansion vs circle
    // averages of the assembled transform.
    for (int n = 0; n <= 6; ++n) {
        const Complex via_contour = contour_coefficient(
            h, 0.0, Complex{}, 0.5 * sweep.inner, n, CoefficientKind::taylor);
        CHECK(std::abs(a[n] - via_contour) < 1e-10);
    }
}

TEST_CASE("annulus sweep argument checks") {
    const CutoffFamily fam = default_family(0.5);
    const LeafwiseForm01 f = builtin_form01("omega0");
    CHECK_THROWS_AS(annulus_sweep(f, 0, fam, 0.0, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(annulus_sweep(f, 1, fam, 0.0, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(AnnulusSweep{}.moments(-1), std::invalid_argument);
}
