#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reebdbar/approximation.hpp"
#include "reebdbar/cutoffs.hpp"
#include "reebdbar/geometry.hpp"
#include "reebdbar/quadrature.hpp"
#include "reebdbar/types.hpp"
#include "reebdbar/verify.hpp"

namespace reebdbar {

enum class KMode { direct, polyseries };

struct SeriesOptions {
    int max_terms = 200;            ///< cap on the correction series
    double obstruction_tol = 1e-3;  ///< |H(0,0)| above this aborts the solve
    double origin_radius = 0.1;     ///< circle for the puncture-value check
    int origin_nodes = 64;
    double b1_tol = 1e-8;           ///< pole detector threshold at the puncture

    void validate() const;
};

struct SolveConfig {
    FoliationParams params;
    CutoffFamily family;
    PolarQuadSpec quad;     ///< disc transforms (h_0 and fallback h_j)
    int sweep_n_r = 128;    ///< shell quadrature feeding Taylor coefficients
    int sweep_n_theta = 128;
    int j_max = 5;          ///< shells 1..j_max carry truncation corrections
    int shell_terms = 128;  ///< Taylor terms kept per shell transform
    double series_tol = 1e-6;  ///< correction-series stopping target
    KMode k_mode = KMode::direct;
    SeriesOptions series;
    RungeOptions runge;
    double fd_step = 1e-4;
    double t_window = 1.0;
    int n_t_samples = 17;
    ShellGridSpec residual_grid;

    void validate() const;
};

/**
 * Globalized approximate primitive
 *   htilde = h_0 + sum_{j=1..j_max} (h_j - v_j)
 * with v_j the certified truncations.  eval computes it anywhere on the
 * covering space: h_0 by a per-call disc transform, each shell correction
 * through a per-(j,t) cached Taylor expansion of the shell transform when z
 * is safely inside the shell's holomorphy disc, by direct quadrature
 * otherwise.  v holds the truncation polynomials (index j-1 for shell j).
 */
struct AssembledHTilde {
    LeafwiseFn eval;
    std::vector<PolyInZ> v;
    std::vector<double> runge_bounds;
    std::vector<int> degrees;
    int j_max = 0;
};

AssembledHTilde assemble_htilde(const LeafwiseForm01& f, const SolveConfig& cfg);

/// Coboundary defect H(z,t) = htilde(lambda z, lambda t) - htilde(z,t).
/// Leafwise holomorphic whenever dbar htilde is gamma-invariant of weight 1.
LeafwiseFn coboundary(const LeafwiseFn& htilde, const FoliationParams& params);

/// The pairing detecting the class of a (0,1) input:
///   I(f) = (1/2i pi) integral of psi_1(xi) f(xi,0) / xi  dxi ^ dxi-bar,
/// evaluated on the support annulus of psi_1.  Linear in f; negative and
/// O(1) on the generating form; zero on exact inputs.  Throws CoverageError
/// when quad.r_max does not reach the outer support edge.
Complex obstruction(const LeafwiseForm01& f, const CutoffFamily& family,
                    const PolarQuadSpec& quad);

/**
 * Cohomological equation  K(z,t) - K(lambda z, lambda t) = H(z,t)  for
 * leafwise-holomorphic H with H(0,0) = 0 (the value at the puncture is
 * taken as the circle mean; |mean| beyond series.obstruction_tol throws
 * ObstructionError, a genuine pole throws it too).
 *
 * direct mode sums K = sum_{n>=0} H(gamma^n p).  The term count is probed
 * once on fixed sample points (five consecutive sup-terms below tol), then
 * frozen, so K is smooth and finite-difference friendly; a series that
 * never settles within series.max_terms probes throws ConvergenceError
 * suggesting polyseries mode.
 *
 * polyseries mode sums the same series reorganized through the truncation
 * polynomials: K = -sum_n sum_j {v_j(gamma^{n+1} p) - v_j(gamma^n p)},
 * which telescopes to sum_j {v_j(p) - v_j(gamma^{N+1} p)}.  Requires v_js.
 */
LeafwiseFn solve_cohomological(const LeafwiseFn& H, const FoliationParams& params,
                               double tol, KMode mode = KMode::direct,
                               const std::vector<PolyInZ>* v_js = nullptr,
                               const SeriesOptions& series = {});

/**
 * Removable-singularity evaluator: the value at center is the contour mean
 * of f over |z - center| = radius at this t.  The principal part is
 * monitored through the first Laurent coefficient; |b_1| > b1_tol means the
 * singularity is genuine and NotRemovableError carries the magnitude.
 */
Complex hartogs_extend(const LeafwiseFn& f, Complex center, double radius,
                       double t, int n_nodes = 64, double b1_tol = 1e-8);

struct SolveDiagnostics {
    Complex obstruction_f{};       ///< pairing against the input
    Complex obstruction_omega0{};  ///< pairing against the generator
    int series_terms = 0;          ///< frozen correction-series length N
    std::vector<int> runge_degrees;
    std::vector<double> runge_bounds;
    double h00 = 0.0;              ///< |circle mean of H at the puncture|
};

struct SolveReport {
    Complex class_coeff{};          ///< c with f = c omega0 + dbar(primitive)
    EquivariantFunction primitive;  ///< weight-0, extended by invariance
    LeafwiseFn primitive_raw;       ///< htilde + K on the covering space
    ResidualBundle residuals;
    SolveDiagnostics diagnostics;
};

/// Full pipeline: class coefficient by the pairing ratio, subtraction of
/// the class part, globalized primitive, invariance correction K, residual
/// report on the fundamental shell grid.
///
/// Mode matters for the primitive's accuracy, and the residual report is
/// the place to watch it.  In direct mode the corrected primitive telescopes
/// to htilde evaluated at gamma^{N+1} p; all of its p-dependence then sits
/// at scale lambda^{N+1} near the origin, which a fixed quadrature grid
/// cannot resolve, so the PDE residual degrades to O(sup|f|) once N is
/// large.  polyseries mode evaluates the same limit as
/// (htilde + sum_j v_j)(p) - sum_j v_j(gamma^{N+1} p): quadrature only ever
/// runs at the scale of p itself and the deep factor is a polynomial
/// evaluation, so residuals stay at quadrature accuracy plus the
/// finite-shell defect (O(lambda^(2 j_max)) on the unit shell).  Use
/// polyseries whenever the primitive is the quantity of interest.
SolveReport decompose(const LeafwiseForm01& f, const SolveConfig& cfg);

}  // namespace reebdbar
