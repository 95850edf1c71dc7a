#include "reebdbar/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace reebdbar {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> uniform_t_samples(double T, int count) {
    if (!(T > 0.0))
        throw std::invalid_argument("uniform_t_samples: window must be positive");
    if (count < 2)
        throw std::invalid_argument("uniform_t_samples: need at least two samples");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = -T + 2.0 * T * i / (count - 1);
    return out;
}

CompactExhaustion make_exhaustion(double R, double lambda, int count, int n_r,
                                  int n_theta, std::vector<double> t_samples) {
    if (!(R > 0.0))
        throw std::invalid_argument("make_exhaustion: R must be positive");
    FoliationParams{lambda}.validate();
    if (count < 1)
        throw std::invalid_argument("make_exhaustion: need at least one grid");
    if (n_r < 1 || n_theta < 1)
        throw std::invalid_argument("make_exhaustion: grids must be nonempty");
    if (t_samples.empty()) t_samples = uniform_t_samples();
    CompactExhaustion ex;
    ex.grids.reserve(count);
    for (int n = 0; n < count; ++n) {
        SectionGrid g;
        g.radius = std::pow(lambda, -n) * R;
        g.n_r = n_r;
        g.n_theta = n_theta;
        g.t_samples = t_samples;
        g.weight = std::pow(0.5, n);
        ex.grids.push_back(std::move(g));
    }
    return ex;
}

double sup_seminorm(const LeafwiseFn& f, const SectionGrid& grid) {
    if (grid.t_samples.empty() || grid.n_r < 1 || grid.n_theta < 1)
        throw std::domain_error("sup_seminorm: empty grid");
    double sup = 0.0;
    for (double t : grid.t_samples) {
        sup = std::max(sup, std::abs(f(Complex{}, t)));
        for (int i = 0; i < grid.n_r; ++i) {
            const double r = grid.radius * (i + 1) / grid.n_r;
            for (int k = 0; k < grid.n_theta; ++k) {
                const double th = 2.0 * kPi * k / grid.n_theta;
                sup = std::max(sup, std::abs(f(std::polar(r, th), t)));
            }
        }
    }
    return sup;
}

double delta_metric(const LeafwiseFn& f, const LeafwiseFn& g,
                    const CompactExhaustion& exhaustion) {
    double total = 0.0;
    auto diff = [&](Complex z, double t) { return f(z, t) - g(z, t); };
    for (const auto& grid : exhaustion.grids)
        total += grid.weight * std::min(1.0, sup_seminorm(diff, grid));
    return total;
}

struct PolyInZ::Impl {
    int degree = 0;
    std::function<std::vector<Complex>(double)> compute;
    mutable std::mutex mu;
    mutable std::unordered_map<double, std::vector<Complex>> cache;
};

PolyInZ::PolyInZ() : impl_(std::make_shared<Impl>()) {
    impl_->compute = [](double) { return std::vector<Complex>{Complex{}}; };
}

PolyInZ::PolyInZ(int degree, std::function<std::vector<Complex>(double)> compute)
    : impl_(std::make_shared<Impl>()) {
    if (degree < 0) throw std::invalid_argument("PolyInZ: degree must be >= 0");
    if (!compute) throw std::invalid_argument("PolyInZ: missing coefficient source");
    impl_->degree = degree;
    impl_->compute = std::move(compute);
}

int PolyInZ::degree() const { return impl_->degree; }

std::vector<Complex> PolyInZ::coefficients(double t) const {
    auto& impl = *impl_;
    {
        std::lock_guard lk(impl.mu);
        auto it = impl.cache.find(t);
        if (it != impl.cache.end()) return it->second;
    }
    auto coeffs = impl.compute(t);
    // Sources may hand over longer moment vectors; the polynomial is the
    // first degree+1 entries.  Short vectors pad with zeros.
    coeffs.resize(impl.degree + 1);
    std::lock_guard lk(impl.mu);
    return impl.cache.emplace(t, std::move(coeffs)).first->second;
}

void PolyInZ::seed(double t, std::vector<Complex> coeffs) const {
    coeffs.resize(impl_->degree + 1);
    std::lock_guard lk(impl_->mu);
    impl_->cache.emplace(t, std::move(coeffs));
}

Complex PolyInZ::operator()(Complex z, double t) const {
    const auto c = coefficients(t);
    Complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void RungeOptions::validate() const {
    if (degree_cap < 0)
        throw std::invalid_argument("runge: degree_cap must be >= 0");
    if (n_circle < 1)
        throw std::invalid_argument("runge: n_circle must be >= 1");
    if (!(circle_factor > 0.0 && circle_factor < 1.0))
        throw std::invalid_argument("runge: circle_factor must lie in (0, 1)");
    if (tail_terms <= degree_cap)
        throw std::invalid_argument(
            "runge: the tail window must extend past the degree cap");
}

TruncationSelection select_truncation(
    const std::vector<std::vector<Complex>>& coeff_rows, double r_star,
    double beyond_tail, double target, int degree_cap) {
    if (coeff_rows.empty())
        throw std::invalid_argument("select_truncation: no coefficient rows");
    if (!(r_star > 0.0))
        throw std::invalid_argument("select_truncation: radius must be positive");
    if (!(target > 0.0))
        throw std::invalid_argument("select_truncation: target must be positive");
    if (!(beyond_tail >= 0.0))
        throw std::invalid_argument("select_truncation: tail allowance must be >= 0");
    const int K = static_cast<int>(coeff_rows.front().size()) - 1;
    if (degree_cap < 0 || degree_cap >= K)
        throw std::invalid_argument(
            "select_truncation: rows must extend past the degree cap");
    // worst[d] = max over rows of sum_{k > d} |a_k| r^k.
    std::vector<double> worst(K + 1, 0.0);
    std::vector<double> term(K + 1);
    for (const auto& row : coeff_rows) {
        if (static_cast<int>(row.size()) != K + 1)
            throw std::invalid_argument("select_truncation: ragged coefficient rows");
        double p = 1.0;
        for (int k = 0; k <= K; ++k) {
            const double m = std::abs(row[k]);
            term[k] = m == 0.0 ? 0.0 : m * p;  // 0 * inf guard for wild radii
            p *= r_star;
        }
        double suffix = 0.0;
        for (int k = K; k >= 0; --k) {
            suffix += term[k];
            if (k >= 1) worst[k - 1] = std::max(worst[k - 1], suffix);
        }
    }
    for (int d = 0; d <= degree_cap; ++d) {
        const double bound = worst[d] + beyond_tail;
        if (bound < target) return {d, bound};
    }
    const double achieved = worst[degree_cap] + beyond_tail;
    std::ostringstream msg;
    msg << "select_truncation: no degree <= " << degree_cap
        << " certifies below " << target << " (best achieved " << achieved
        << ")";
    throw TruncationError(msg.str(), achieved);
}

RungeResult truncate_runge(const LeafwiseForm01& f, int j,
                           const CutoffFamily& family,
                           const PolarQuadSpec& sweep_spec,
                           const CompactExhaustion& exhaustion,
                           const std::vector<double>& t_samples,
                           const RungeOptions& opts) {
    opts.validate();
    family.validate();
    if (j < 1)
        throw std::invalid_argument("truncate_runge: shell index must be >= 1");
    if (t_samples.empty())
        throw std::invalid_argument("truncate_runge: no t samples");
    if (static_cast<int>(exhaustion.grids.size()) < j)
        throw std::invalid_argument(
            "truncate_runge: exhaustion too shallow for this shell");

    const Annulus ann = support_annulus(family, j);
    double r_star = 0.0;
    for (int n = 0; n < j; ++n)
        r_star = std::max(r_star, exhaustion.grids[n].radius);
    if (!(r_star > 0.0 && r_star < ann.inner))
        throw std::invalid_argument(
            "truncate_runge: certification grids reach the shell support");

    // The expansion circle must enclose every certification grid strictly, or
    // the geometric tail beyond the computed coefficients diverges; raise the
    // configured factor to the midpoint when it is too tight.
    const double cf = std::max(opts.circle_factor,
                               0.5 * (1.0 + r_star / ann.inner));
    const double rho_c = cf * ann.inner;
    const double q = r_star / rho_c;

    const int K = opts.tail_terms;
    std::vector<std::vector<Complex>> rows;
    rows.reserve(t_samples.size());
    double m_max = 0.0;
    for (double t : t_samples) {
        const AnnulusSweep sweep =
            annulus_sweep(f, j, family, t, sweep_spec.n_r, sweep_spec.n_theta);
        rows.push_back(sweep.moments(K));
        for (int i = 0; i < opts.n_circle; ++i) {
            const double th = 2.0 * kPi * i / opts.n_circle;
            m_max = std::max(m_max,
                             std::abs(sweep.transform_at(std::polar(rho_c, th))));
        }
    }
    const double beyond = m_max * std::pow(q, K + 1) / (1.0 - q);

    TruncationSelection sel = select_truncation(rows, r_star, beyond,
                                                std::ldexp(1.0, -j),
                                                opts.degree_cap);

    auto compute = [f, j, family, n_r = sweep_spec.n_r,
                    n_th = sweep_spec.n_theta, d = sel.degree](double t) {
        return annulus_sweep(f, j, family, t, n_r, n_th).moments(d);
    };
    RungeResult result;
    result.poly = PolyInZ(sel.degree, std::move(compute));
    result.degree = sel.degree;
    result.certified_bound = sel.bound;
    for (std::size_t i = 0; i < t_samples.size(); ++i)
        result.poly.seed(t_samples[i], std::move(rows[i]));
    return result;
}

}  // namespace reebdbar
