#pragma once

#include <vector>

#include "reebdbar/geometry.hpp"
#include "reebdbar/types.hpp"

namespace reebdbar {

/// Spherical-shell sample of the fundamental annulus lambda < rho <= 1.
/// Radii land strictly inside (lambda, 1] with the outer boundary included;
/// latitudes are midpoints, so the poles (z = 0, a coordinate singularity
/// for z-stencils) are never hit and, for even n_chi, neither is t = 0;
/// longitudes are uniform.
struct ShellGridSpec {
    int n_sigma = 4;
    int n_chi = 8;
    int n_theta = 5;

    void validate() const;
};

std::vector<Point> shell_grid(const ShellGridSpec& spec,
                              const FoliationParams& params);

/// Leafwise antiholomorphic derivative by central differences at fixed t:
///   dbar h = (1/2)[(h(z+s)-h(z-s))/(2s) + i (h(z+is)-h(z-is))/(2s)].
/// O(step^2) accurate.
Complex dbar_fd(const LeafwiseFn& h, Complex z, double t, double step);

/// Residual suprema over a point grid.
///   pde:        sup |dbar_fd h - f|      (h solves dbar h = f leafwise)
///   invariance: sup |h(gamma p) - h(p)|
///   holo:       sup |dbar_fd of holo_part|, 0 when none is supplied
struct ResidualBundle {
    double pde = 0.0;
    double invariance = 0.0;
    double holo = 0.0;
    int grid_points = 0;
    double fd_step = 0.0;
};

/// holo_part, when non-null, is an evaluator expected to be leafwise
/// holomorphic (the coboundary H in the solving pipeline); its FD-dbar sup
/// lands in .holo.  Throws std::domain_error on an empty grid.
ResidualBundle residual_report(const LeafwiseForm01& f, const LeafwiseFn& h,
                               const std::vector<Point>& grid,
                               const FoliationParams& params,
                               double fd_step = 1e-4,
                               const LeafwiseFn* holo_part = nullptr);

}  // namespace reebdbar
