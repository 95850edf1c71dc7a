#pragma once

#include <string>
#include <variant>
#include <vector>

#include "reebdbar/types.hpp"

namespace reebdbar {

/// gamma^k(z,t) = (lambda^k z, lambda^k t).  k may be negative.
Point gamma_pow(const Point& p, int k, const FoliationParams& params);

/// The unique integer k with lambda < rho(gamma^k p) <= 1.  Points with
/// rho(gamma^k p) exactly 1 take that k.  Throws std::domain_error at (0,0).
int fundamental_index(const Point& p, const FoliationParams& params);

/**
 * A gamma-equivariant scalar field of integer weight w, i.e.
 *
 *     lambda^w F(lambda z, lambda t) = F(z, t).
 *
 * The field is represented by its values on the fundamental annulus
 * {lambda < rho <= 1} together with the weight; evaluation anywhere else
 * pushes the point into the annulus with gamma^k and rescales by
 * lambda^(k w).  The functional relation therefore holds by construction,
 * not as an approximation.
 *
 * Weight-positive fields are unbounded near the origin (|F| grows like
 * rho^-w along rays), which is why evaluation at exactly (0,0) is refused.
 */
struct EquivariantFunction {
    int weight = 0;
    LeafwiseFn fund_eval;  ///< evaluator on the fundamental annulus
};

Complex eval_equivariant(const EquivariantFunction& f, const Point& p,
                         const FoliationParams& params);

/// alpha*f + beta*g for two fields of equal weight (throws otherwise).
EquivariantFunction combine(const EquivariantFunction& f,
                            const EquivariantFunction& g, Complex alpha,
                            Complex beta);

/// Plain (z,t) evaluator with the params bound in.
LeafwiseFn bind(const EquivariantFunction& f, const FoliationParams& params);

/// An invariant leafwise (0,1)-form  f(z,t) dzbar.  The coefficient has
/// weight 1: lambda f(lambda z, lambda t) = f(z, t).
struct LeafwiseForm01 {
    EquivariantFunction coeff;
};

/// Catalogue of closed-form fields on the covering space:
///   "omega0"    (0,1)-form  z / (z zbar + t^2) dzbar          weight 1
///   "exact_g0"  (0,1)-form  z t^2 / (z zbar + t^2)^2 dzbar    weight 1
///   "a"         function    1 / sqrt(z zbar + t^2)            weight 1
///   "g0"        function    z zbar / (z zbar + t^2)           weight 0
/// Unknown names throw std::invalid_argument listing the catalogue.
std::variant<LeafwiseForm01, EquivariantFunction> builtin_form(
    const std::string& name);

/// Same catalogue restricted to weight-1 coefficients, returned as a
/// (0,1)-form ("a" is promoted to the form a dzbar).
LeafwiseForm01 builtin_form01(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace reebdbar
