#pragma once

#include <vector>

#include "reebdbar/cutoffs.hpp"
#include "reebdbar/geometry.hpp"
#include "reebdbar/types.hpp"

namespace reebdbar {

/// Polar product rule: composite midpoint in r (never touches r = 0),
/// trapezoid in theta (spectrally accurate on the periodic direction).
struct PolarQuadSpec {
    int n_r = 256;
    int n_theta = 256;
    double r_max = 4.0;

    void validate() const;
};

/**
 * (1/2i pi) Int g(xi, t) / (xi - z) dxi ^ dxibar  over the plane.
 *
 * Computed after the substitution xi = z + r e^(i theta), which removes the
 * kernel singularity exactly:
 *
 *     (-1/pi) Int_0..r_max Int_0..2pi  g(z + r e^(i theta), t) e^(-i theta)
 *                                      dtheta dr.
 *
 * support_radius must bound the support of g(., t); a CoverageError is
 * thrown when r_max < support_radius + |z| (nodes would miss part of the
 * support).
 */
Complex cauchy_transform(const LeafwiseFn& g, double t, Complex z,
                         const PolarQuadSpec& spec, double support_radius);

/// Cauchy transform of the shell piece psi_j(xi) f(xi, t):  d/dzbar of the
/// result is psi_j(z) f(z, t).  For j >= 1 the integrand avoids the origin;
/// for j = 0 at t = 0 the integrand may carry the integrable rho^-1 growth
/// of a weight-1 coefficient, which the polar rule handles without special
/// casing (nodes never sit at the singular point).
Complex h_partial(const LeafwiseForm01& f, int j, Complex z, double t,
                  const CutoffFamily& family, const PolarQuadSpec& spec);

enum class CoefficientKind { taylor, laurent };

/// Circle-average coefficient extraction on |xi - center| = radius:
///   taylor  a_n = (1/2i pi) Oint h(xi,t) (xi-center)^-(n+1) dxi     (n >= 0)
///   laurent b_m = (1/2i pi) Oint (xi-center)^(m-1) h(xi,t) dxi      (m >= 1)
/// Trapezoid with n_nodes equispaced samples; exact for circle harmonics of
/// order below n_nodes.
Complex contour_coefficient(const LeafwiseFn& h, double t, Complex center,
                            double radius, int n, CoefficientKind kind,
                            int n_nodes = 256);

/// All Taylor coefficients 0..max_n from a single pass of circle samples.
std::vector<Complex> taylor_coefficients(const LeafwiseFn& h, double t,
                                         Complex center, double radius,
                                         int max_n, int n_nodes = 256);

/// (1/2i pi) Int F(xi) dxi ^ dxibar = (-1/pi) IntInt F dA on a polar grid
/// centered at the origin.  The optional radial window [r_lo, r_hi]
/// restricts the node set when the support is known; values outside the
/// window are treated as zero, so the window must contain the support.
Complex area_integral(const std::function<Complex(Complex)>& integrand,
                      const PolarQuadSpec& spec, double r_lo = 0.0,
                      double r_hi = -1.0);

/**
 * Precomputed quadrature data for one shell integrand psi_j(xi) f(xi, t) on
 * its support annulus: node positions and area-weighted integrand values.
 * From these, the Cauchy transform at any z off the annulus and the moment
 * coefficients of its expansion about 0 are plain kernel sums; the expensive
 * part (evaluating psi_j f on the grid) is paid once per (j, t).
 */
struct AnnulusSweep {
    std::vector<Complex> xi;  ///< node positions
    std::vector<Complex> w;   ///< psi_j(xi) f(xi,t) r dr dtheta per node
    double inner = 0.0;
    double outer = 0.0;

    /// (-1/pi) sum w_i / (xi_i - z).  Valid (and smooth) for |z| < inner.
    Complex transform_at(Complex z) const;

    /// Taylor coefficients about 0 of the transform, valid on |z| < inner:
    /// a_k = (-1/pi) sum w_i xi_i^-(k+1), for k = 0..max_k.
    std::vector<Complex> moments(int max_k) const;
};

/// Evaluate psi_j(xi) f(xi, t) on a midpoint-by-trapezoid grid of the
/// support annulus of psi_j (j >= 1).
AnnulusSweep annulus_sweep(const LeafwiseForm01& f, int j,
                           const CutoffFamily& family, double t, int n_r,
                           int n_theta);

}  // namespace reebdbar
