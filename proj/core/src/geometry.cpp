#include "reebdbar/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace reebdbar {

void FoliationParams::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("foliation: lambda must lie in (0, 1)");
}

double rho(const Point& p) { return std::sqrt(std::norm(p.z) + p.t * p.t); }

ObstructionError::ObstructionError(const std::string& what, Complex estimate_)
    : std::runtime_error(what), estimate(estimate_) {}

TruncationError::TruncationError(const std::string& what, double achieved_)
    : std::runtime_error(what), achieved(achieved_) {}

NotRemovableError::NotRemovableError(const std::string& what, double b1_magnitude_)
    : std::runtime_error(what), b1_magnitude(b1_magnitude_) {}

Point gamma_pow(const Point& p, int k, const FoliationParams& params) {
    params.validate();
    const double s = std::pow(params.lambda, k);
    return {s * p.z, s * p.t};
}

int fundamental_index(const Point& p, const FoliationParams& params) {
    params.validate();
    const double r = rho(p);
    if (r == 0.0)
        throw std::domain_error(
            "fundamental_index: (0,0) is not on the covering space");
    const double L = params.lambda;
    int k = static_cast<int>(std::ceil(-std::log(r) / std::log(L)));
    // Rounding in the logs can land one step off; settle against the exact
    // inequalities lambda < lambda^k r <= 1 (boundary value 1 is kept).
    while (std::pow(L, k) * r > 1.0) ++k;
    while (std::pow(L, k) * r <= L) --k;
    return k;
}

Complex eval_equivariant(const EquivariantFunction& f, const Point& p,
                         const FoliationParams& params) {
    if (!f.fund_eval)
        throw std::invalid_argument("eval_equivariant: field has no evaluator");
    if (rho(p) == 0.0) {
        if (f.weight > 0)
            throw std::domain_error(
                "eval_equivariant: a positive-weight field is unbounded near "
                "the origin");
        throw std::domain_error(
            "eval_equivariant: (0,0) is not on the covering space");
    }
    const int k = fundamental_index(p, params);
    const Point q = gamma_pow(p, k, params);
    const double scale =
        std::pow(params.lambda, static_cast<double>(k) * f.weight);
    return scale * f.fund_eval(q.z, q.t);
}

EquivariantFunction combine(const EquivariantFunction& f,
                            const EquivariantFunction& g, Complex alpha,
                            Complex beta) {
    if (f.weight != g.weight) {
        std::ostringstream msg;
        msg << "combine: weights differ (" << f.weight << " vs " << g.weight
            << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!f.fund_eval || !g.fund_eval)
        throw std::invalid_argument("combine: field has no evaluator");
    return {f.weight, [fe = f.fund_eval, ge = g.fund_eval, alpha,
                       beta](Complex z, double t) {
                return alpha * fe(z, t) + beta * ge(z, t);
            }};
}

LeafwiseFn bind(const EquivariantFunction& f, const FoliationParams& params) {
    params.validate();
    return [f, params](Complex z, double t) {
        return eval_equivariant(f, Point{z, t}, params);
    };
}

std::variant<LeafwiseForm01, EquivariantFunction> builtin_form(
    const std::string& name) {
    if (name == "omega0")
        return LeafwiseForm01{
            {1, [](Complex z, double t) { return z / (std::norm(z) + t * t); }}};
    if (name == "exact_g0")
        // Vanishes identically on the t = 0 slice, where the class pairing
        // lives; that is what makes it invisible to the obstruction.
        return LeafwiseForm01{{1, [](Complex z, double t) {
                                   const double d = std::norm(z) + t * t;
                                   return z * (t * t) / (d * d);
                               }}};
    if (name == "a")
        return EquivariantFunction{1, [](Complex z, double t) {
                                       return Complex{
                                           1.0 / std::sqrt(std::norm(z) + t * t),
                                           0.0};
                                   }};
    if (name == "g0")
        return EquivariantFunction{0, [](Complex z, double t) {
                                       const double d = std::norm(z) + t * t;
                                       return Complex{std::norm(z) / d, 0.0};
                                   }};
    std::ostringstream msg;
    msg << "unknown builtin \"" << name << "\"; catalogue:";
    for (const auto& n : builtin_names()) msg << ' ' << n;
    throw std::invalid_argument(msg.str());
}

LeafwiseForm01 builtin_form01(const std::string& name) {
    auto v = builtin_form(name);
    if (auto* form = std::get_if<LeafwiseForm01>(&v)) return std::move(*form);
    auto& field = std::get<EquivariantFunction>(v);
    if (field.weight != 1) {
        std::ostringstream msg;
        msg << "builtin \"" << name << "\" has weight " << field.weight
            << "; only weight-1 coefficients define an invariant (0,1)-form";
        throw std::invalid_argument(msg.str());
    }
    return LeafwiseForm01{std::move(field)};
}

std::vector<std::string> builtin_names() {
    return {"omega0", "exact_g0", "a", "g0"};
}

}  // namespace reebdbar
