#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace reebdbar {

using Complex = std::complex<double>;

/// Scalar field on the covering space: value at leaf coordinate z and
/// transverse coordinate t.
using LeafwiseFn = std::function<Complex(Complex, double)>;

/// Contraction ratio of the deck transformation gamma(z,t) = (lambda z, lambda t).
struct FoliationParams {
    double lambda = 0.5;

    void validate() const;
};

/// A point (z, t) of the covering space C x R minus the origin.
struct Point {
    Complex z{};
    double t = 0.0;
};

/// sqrt(|z|^2 + t^2).  Scales by exactly lambda under gamma, which is what
/// makes the annulus {lambda < rho <= 1} a fundamental domain.
double rho(const Point& p);

/// Quadrature domain does not cover the support of the integrand.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative construction failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The input carries a nonzero class: the requested equation has no solution.
struct ObstructionError : std::runtime_error {
    ObstructionError(const std::string& what, Complex estimate_);
    Complex estimate;
};

/// No admissible truncation degree reached the requested bound.
struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double achieved_);
    double achieved;
};

/// A singularity is not removable: the first Laurent coefficient is nonzero.
struct NotRemovableError : std::runtime_error {
    NotRemovableError(const std::string& what, double b1_magnitude_);
    double b1_magnitude;
};

}  // namespace reebdbar
