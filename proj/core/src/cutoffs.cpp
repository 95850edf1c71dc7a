#include "reebdbar/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace reebdbar {

double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    // a / (a + b); at u = 1/2 the two exponentials are the same double, so
    // this is exactly 0.5.
    return a / (a + b);
}

void CutoffFamily::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("cutoff: R must be positive");
    if (!(eps > 0.0))
        throw std::invalid_argument("cutoff: eps must be positive");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("cutoff: lambda must lie in (0, 1)");
    if (!(R + eps < R_out))
        throw std::invalid_argument("cutoff: needs R + eps < R_out");
    if (!(R_out < R / lambda))
        throw std::invalid_argument("cutoff: needs R_out < R / lambda");
}

CutoffFamily default_family(double lambda) {
    FoliationParams{lambda}.validate();
    CutoffFamily fam;
    fam.lambda = lambda;
    if (!(fam.R_out < fam.R / lambda)) {
        // The standard collar no longer fits between the plateau and the
        // rescaled plateau; shrink it into a quarter of the available gap.
        fam.eps = (fam.R / lambda - fam.R) / 4.0;
        fam.R_out = fam.R + 2.0 * fam.eps;
    }
    fam.validate();
    return fam;
}

double rho0(const CutoffFamily& family, Complex x) {
    const double r = std::abs(x);
    if (r <= family.R + family.eps) return 1.0;
    if (r >= family.R_out) return 0.0;
    const double u = (family.R_out - r) / (family.R_out - family.R - family.eps);
    return family.profile ? family.profile(u) : smoothstep(u);
}

double phi(const CutoffFamily& family, int j, Complex xi) {
    if (j < 0) throw std::invalid_argument("phi: plateau index must be >= 0");
    // Scale by repeated multiplication: phi_j(lambda xi) and phi_{j+1}(xi)
    // then run the identical chain of products, so the shell relation
    // psi_j(lambda xi) = psi_{j+1}(xi) holds to the bit for every lambda.
    Complex x = xi;
    for (int m = 0; m < j; ++m) x *= family.lambda;
    return rho0(family, x);
}

double psi(const CutoffFamily& family, int j, Complex xi) {
    if (j < 0) throw std::invalid_argument("psi: shell index must be >= 0");
    if (j == 0) return phi(family, 0, xi);
    return phi(family, j, xi) - phi(family, j - 1, xi);
}

Annulus support_annulus(const CutoffFamily& family, int j) {
    if (j < 1)
        throw std::invalid_argument("support_annulus: shell index must be >= 1");
    family.validate();
    return {std::pow(family.lambda, -(j - 1)) * (family.R + family.eps),
            std::pow(family.lambda, -j) * family.R_out};
}

}  // namespace reebdbar
