#include "reebdbar/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace reebdbar {

namespace {
constexpr double kPi = std::numbers::pi;
}

void PolarQuadSpec::validate() const {
    if (n_r < 1) throw std::invalid_argument("quadrature: n_r must be >= 1");
    if (n_theta < 1)
        throw std::invalid_argument("quadrature: n_theta must be >= 1");
    if (!(r_max > 0.0))
        throw std::invalid_argument("quadrature: r_max must be positive");
}

Complex cauchy_transform(const LeafwiseFn& g, double t, Complex z,
                         const PolarQuadSpec& spec, double support_radius) {
    spec.validate();
    if (!(support_radius > 0.0))
        throw std::invalid_argument(
            "cauchy_transform: support_radius must be positive");
    const double reach = support_radius + std::abs(z);
    if (spec.r_max < reach) {
        std::ostringstream msg;
        msg << "cauchy_transform: r_max = " << spec.r_max
            << " misses part of the support (needs " << reach << ")";
        throw CoverageError(msg.str());
    }
    // All of the support lies within distance `reach` of z, so the radial
    // window shrinks to it; r_max only caps the budgeted reach.
    const double dr = reach / spec.n_r;
    const double dth = 2.0 * kPi / spec.n_theta;
    Complex acc{};
    for (int i = 0; i < spec.n_r; ++i) {
        const double r = (i + 0.5) * dr;
        Complex ring{};
        for (int k = 0; k < spec.n_theta; ++k) {
            const double th = dth * k;
            const Complex e{std::cos(th), std::sin(th)};
            ring += g(z + r * e, t) * std::conj(e);
        }
        acc += ring;
    }
    return acc * (-dr * dth / kPi);
}

Complex h_partial(const LeafwiseForm01& f, int j, Complex z, double t,
                  const CutoffFamily& family, const PolarQuadSpec& spec) {
    if (j < 0)
        throw std::invalid_argument("h_partial: shell index must be >= 0");
    const double support =
        j == 0 ? family.R_out : support_annulus(family, j).outer;
    const FoliationParams params{family.lambda};
    auto coeff = bind(f.coeff, params);
    auto integrand = [&](Complex xi, double tt) -> Complex {
        const double cut = psi(family, j, xi);
        if (cut == 0.0) return {};
        // (0,0) is off the covering space; the coefficient's rho^-1 growth
        // is integrable, so the single excluded node costs nothing.
        if (xi == Complex{} && tt == 0.0) return {};
        return cut * coeff(xi, tt);
    };
    return cauchy_transform(integrand, t, z, spec, support);
}

Complex contour_coefficient(const LeafwiseFn& h, double t, Complex center,
                            double radius, int n, CoefficientKind kind,
                            int n_nodes) {
    if (!(radius > 0.0))
        throw std::invalid_argument("contour_coefficient: radius must be positive");
    if (n_nodes < 1)
        throw std::invalid_argument("contour_coefficient: n_nodes must be >= 1");
    if (kind == CoefficientKind::taylor && n < 0)
        throw std::invalid_argument("contour_coefficient: taylor order must be >= 0");
    if (kind == CoefficientKind::laurent && n < 1)
        throw std::invalid_argument("contour_coefficient: laurent order must be >= 1");
    const double sign = kind == CoefficientKind::taylor ? -1.0 : 1.0;
    Complex acc{};
    for (int k = 0; k < n_nodes; ++k) {
        const double th = 2.0 * kPi * k / n_nodes;
        acc += h(center + std::polar(radius, th), t) * std::polar(1.0, sign * n * th);
    }
    const double rn = std::pow(radius, n);
    return kind == CoefficientKind::taylor ? acc / (rn * n_nodes)
                                           : acc * rn / static_cast<double>(n_nodes);
}

std::vector<Complex> taylor_coefficients(const LeafwiseFn& h, double t,
                                         Complex center, double radius,
                                         int max_n, int n_nodes) {
    if (max_n < 0)
        throw std::invalid_argument("taylor_coefficients: max_n must be >= 0");
    if (!(radius > 0.0))
        throw std::invalid_argument("taylor_coefficients: radius must be positive");
    if (n_nodes < 1)
        throw std::invalid_argument("taylor_coefficients: n_nodes must be >= 1");
    std::vector<Complex> samples(n_nodes);
    for (int k = 0; k < n_nodes; ++k)
        samples[k] = h(center + std::polar(radius, 2.0 * kPi * k / n_nodes), t);
    std::vector<Complex> out(max_n + 1);
    for (int n = 0; n <= max_n; ++n) {
        Complex acc{};
        for (int k = 0; k < n_nodes; ++k)
            acc += samples[k] * std::polar(1.0, -2.0 * kPi * n * k / n_nodes);
        out[n] = acc / (std::pow(radius, n) * n_nodes);
    }
    return out;
}

Complex area_integral(const std::function<Complex(Complex)>& integrand,
                      const PolarQuadSpec& spec, double r_lo, double r_hi) {
    spec.validate();
    const double hi = r_hi < 0.0 ? spec.r_max : r_hi;
    if (!(r_lo >= 0.0) || !(hi > r_lo))
        throw std::invalid_argument(
            "area_integral: window must satisfy 0 <= r_lo < r_hi");
    if (hi > spec.r_max) {
        std::ostringstream msg;
        msg << "area_integral: window edge " << hi << " exceeds r_max = "
            << spec.r_max;
        throw CoverageError(msg.str());
    }
    const double dr = (hi - r_lo) / spec.n_r;
    const double dth = 2.0 * kPi / spec.n_theta;
    Complex acc{};
    for (int i = 0; i < spec.n_r; ++i) {
        const double r = r_lo + (i + 0.5) * dr;
        Complex ring{};
        for (int k = 0; k < spec.n_theta; ++k) {
            const double th = dth * k;
            ring += integrand(std::polar(r, th));
        }
        acc += ring * r;
    }
    return acc * (-dr * dth / kPi);
}

Complex AnnulusSweep::transform_at(Complex z) const {
    Complex acc{};
    for (std::size_t i = 0; i < xi.size(); ++i) acc += w[i] / (xi[i] - z);
    return acc * (-1.0 / kPi);
}

std::vector<Complex> AnnulusSweep::moments(int max_k) const {
    if (max_k < 0)
        throw std::invalid_argument("moments: max_k must be >= 0");
    std::vector<Complex> acc(max_k + 1);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const Complex inv = 1.0 / xi[i];
        Complex p = inv;  // xi^-(k+1) for k = 0
        for (int k = 0; k <= max_k; ++k) {
            acc[k] += w[i] * p;
            p *= inv;
        }
    }
    for (auto& a : acc) a *= -1.0 / kPi;
    return acc;
}

AnnulusSweep annulus_sweep(const LeafwiseForm01& f, int j,
                           const CutoffFamily& family, double t, int n_r,
                           int n_theta) {
    if (j < 1)
        throw std::invalid_argument("annulus_sweep: shell index must be >= 1");
    if (n_r < 1 || n_theta < 1)
        throw std::invalid_argument("annulus_sweep: grid must be nonempty");
    const Annulus ann = support_annulus(family, j);
    const FoliationParams params{family.lambda};
    auto coeff = bind(f.coeff, params);
    AnnulusSweep sweep;
    sweep.inner = ann.inner;
    sweep.outer = ann.outer;
    sweep.xi.reserve(static_cast<std::size_t>(n_r) * n_theta);
    sweep.w.reserve(static_cast<std::size_t>(n_r) * n_theta);
    const double dr = (ann.outer - ann.inner) / n_r;
    const double dth = 2.0 * kPi / n_theta;
    for (int i = 0; i < n_r; ++i) {
        const double r = ann.inner + (i + 0.5) * dr;
        for (int k = 0; k < n_theta; ++k) {
            const Complex xi = std::polar(r, dth * k);
            const double cut = psi(family, j, xi);
            if (cut == 0.0) continue;
            sweep.xi.push_back(xi);
            sweep.w.push_back(cut * coeff(xi, t) * (r * dr * dth));
        }
    }
    return sweep;
}

}  // namespace reebdbar
