#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "reebdbar/cutoffs.hpp"
#include "reebdbar/quadrature.hpp"
#include "reebdbar/types.hpp"

namespace reebdbar {

/// Sample grid for one section disc |z| <= radius, |t| <= t-window.
/// Radial nodes are boundary-inclusive (suprema want the edge), plus the
/// disc center.
struct SectionGrid {
    double radius = 1.0;
    int n_r = 64;
    int n_theta = 64;
    std::vector<double> t_samples;
    double weight = 1.0;
};

/// Nested family K_0 c K_1 c ... of section grids, radius lambda^-n R and
/// weight 2^-n for grid n.  Everything downstream samples t-dependent
/// suprema on these grids.
struct CompactExhaustion {
    std::vector<SectionGrid> grids;
};

/// count uniform samples of [-T, T] (endpoints included).
std::vector<double> uniform_t_samples(double T = 1.0, int count = 17);

CompactExhaustion make_exhaustion(double R, double lambda, int count,
                                  int n_r = 64, int n_theta = 64,
                                  std::vector<double> t_samples = {});

/// max |f| over the grid nodes.  Throws std::domain_error on an empty grid.
double sup_seminorm(const LeafwiseFn& f, const SectionGrid& grid);

/// Exhaustion metric  sum_n weight_n min(1, sup_grid_n |f - g|).
/// Bounded by the weight sum, zero iff f = g on every node.
double delta_metric(const LeafwiseFn& f, const LeafwiseFn& g,
                    const CompactExhaustion& exhaustion);

/**
 * Polynomial in z whose coefficients are functions of t.  Coefficient
 * vectors are produced on demand per t and cached (exact-bit key); no
 * interpolation across t ever happens.  Evaluation is Horner on the cached
 * vector, so it is exactly sum c_k(t) z^k.  The cache is mutex-guarded and
 * recomputation is deterministic, so concurrent readers are fine.
 */
class PolyInZ {
public:
    PolyInZ();  // the zero polynomial
    PolyInZ(int degree, std::function<std::vector<Complex>(double)> compute);

    int degree() const;
    std::vector<Complex> coefficients(double t) const;
    Complex operator()(Complex z, double t) const;

    /// Pre-populate the cache (used for coefficients that were already
    /// computed during certification).
    void seed(double t, std::vector<Complex> coeffs) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

struct RungeOptions {
    int degree_cap = 64;        ///< admissible truncation degrees
    int n_circle = 256;         ///< samples of |h_j| on the bound circle
    double circle_factor = 0.9; ///< bound circle radius = factor * inner support edge
    int tail_terms = 96;        ///< coefficients computed beyond the cap for tail bounds

    void validate() const;
};

struct RungeResult {
    PolyInZ poly;
    int degree = 0;
    double certified_bound = 0.0;  ///< majorant bound for |h_j - v_j| on the cert grids
};

struct TruncationSelection {
    int degree = 0;
    double bound = 0.0;
};

/**
 * Degree selection shared by truncate_runge and tests: given per-sample
 * coefficient rows a_0..a_K (one row per t), the certification radius, and
 * a beyond-K tail allowance, returns the smallest degree d <= degree_cap
 * whose majorant  max_rows sum_{k>d} |a_k| r^k + beyond_tail  is below
 * target.  Throws TruncationError with the best achieved bound otherwise.
 */
TruncationSelection select_truncation(
    const std::vector<std::vector<Complex>>& coeff_rows, double r_star,
    double beyond_tail, double target, int degree_cap);

/**
 * Truncation step: the shell transform h_j is holomorphic in z on the disc
 * bounded by the inner support edge of psi_j, so it equals its Taylor series
 * about 0 there.  The discretized transform inherits that structure exactly:
 * expanding its kernel 1/(xi_i - z) in powers of z gives its coefficients in
 * closed form (AnnulusSweep::moments), per t sample, with no extraction
 * error.  The returned polynomial is the minimal partial sum whose certified
 * remainder bound on the exhaustion grids 0..j-1 is below 2^-j.
 *
 * The certificate is a radial majorant: on |z| <= r the remainder is at most
 * sum_{k>d} |a_k(t)| r^k, and coefficients beyond the computed range are
 * dominated via Cauchy's estimate by max|h_j| sampled on a circle of radius
 * circle_factor * inner_edge (raised if needed so the cert radii sit
 * strictly inside it) times (r/circle_radius)^k.  Throws TruncationError
 * (with the best achieved bound) when even the degree cap fails.
 */
RungeResult truncate_runge(const LeafwiseForm01& f, int j,
                           const CutoffFamily& family,
                           const PolarQuadSpec& sweep_spec,
                           const CompactExhaustion& exhaustion,
                           const std::vector<double>& t_samples,
                           const RungeOptions& opts = {});

}  // namespace reebdbar
