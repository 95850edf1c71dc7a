#pragma once

#include <functional>

#include "reebdbar/types.hpp"

namespace reebdbar {

/**
 * Scaled family of radial plateau cutoffs.
 *
 *   rho0  : C^inf radial bump, 1 on |x| <= R+eps, 0 on |x| >= R_out
 *   phi_j : phi_j(xi) = rho0(lambda^j xi), plateaus growing with j
 *   psi_j : psi_0 = phi_0,  psi_j = phi_j - phi_{j-1}  (j >= 1)
 *
 * The shells satisfy sum_{j=0..N} psi_j = phi_N and, for j >= 1,
 * psi_j(lambda xi) = psi_{j+1}(xi); for j = 0 the corresponding relation is
 * psi_0(lambda xi) - psi_0(xi) = psi_1(xi).
 *
 * Geometry constraints (validated): R > 0, eps > 0, 0 < lambda < 1,
 * R + eps < R_out < R / lambda.  The first keeps plateau and support edges
 * nested so each psi_j (j >= 1) lives on a proper annulus; the second keeps
 * consecutive shells from skipping scales.
 */
struct CutoffFamily {
    double R = 1.0;
    double eps = 0.25;
    double R_out = 1.75;
    double lambda = 0.5;
    /// Transition profile S: [0,1] -> [0,1] used inside the collar.  Empty
    /// means the built-in smoothstep.  Must be 0 at 0 and 1 at 1; rho0 only
    /// ever feeds it arguments from [0,1].
    std::function<double(double)> profile;

    void validate() const;
};

/// Standard geometry (R = 1, eps = 0.25, R_out = 1.75) when it fits the
/// nesting constraints at this lambda, otherwise a scaled-down collar that
/// does (kicks in around lambda >= 4/7).
CutoffFamily default_family(double lambda);

/// Smooth monotone step: exactly 0 for u <= 0, exactly 1 for u >= 1,
/// 1/2 at u = 1/2, C^inf flat at both ends.
double smoothstep(double u);

double rho0(const CutoffFamily& family, Complex x);
double phi(const CutoffFamily& family, int j, Complex xi);
double psi(const CutoffFamily& family, int j, Complex xi);

struct Annulus {
    double inner = 0.0;
    double outer = 0.0;
};

/// Closed annulus outside of which psi_j vanishes (j >= 1):
/// inner = lambda^-(j-1) (R + eps), outer = lambda^-j R_out.
Annulus support_annulus(const CutoffFamily& family, int j = 1);

}  // namespace reebdbar
