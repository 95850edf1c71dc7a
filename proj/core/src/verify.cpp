#include "reebdbar/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reebdbar {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ShellGridSpec::validate() const {
    if (n_sigma < 1 || n_chi < 1 || n_theta < 1)
        throw std::invalid_argument("shell grid: all counts must be >= 1");
}

std::vector<Point> shell_grid(const ShellGridSpec& spec,
                              const FoliationParams& params) {
    spec.validate();
    params.validate();
    const double L = params.lambda;
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(spec.n_sigma) * spec.n_chi *
                spec.n_theta);
    for (int i = 0; i < spec.n_sigma; ++i) {
        const double sigma = L + (1.0 - L) * (i + 1) / spec.n_sigma;
        for (int m = 0; m < spec.n_chi; ++m) {
            const double chi = -0.5 * kPi + kPi * (m + 0.5) / spec.n_chi;
            const double rz = sigma * std::cos(chi);
            const double t = sigma * std::sin(chi);
            for (int k = 0; k < spec.n_theta; ++k) {
                const double th = 2.0 * kPi * k / spec.n_theta;
                pts.push_back({rz * Complex{std::cos(th), std::sin(th)}, t});
            }
        }
    }
    return pts;
}

Complex dbar_fd(const LeafwiseFn& h, Complex z, double t, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("dbar_fd: step must be positive");
    const Complex dx = (h(z + step, t) - h(z - step, t)) / (2.0 * step);
    const Complex dy =
        (h(z + Complex{0.0, step}, t) - h(z - Complex{0.0, step}, t)) /
        (2.0 * step);
    return 0.5 * (dx + Complex{0.0, 1.0} * dy);
}

ResidualBundle residual_report(const LeafwiseForm01& f, const LeafwiseFn& h,
                               const std::vector<Point>& grid,
                               const FoliationParams& params, double fd_step,
                               const LeafwiseFn* holo_part) {
    if (grid.empty()) throw std::domain_error("residual_report: empty grid");
    params.validate();
    if (!h) throw std::invalid_argument("residual_report: missing evaluator");
    auto target = bind(f.coeff, params);
    ResidualBundle out;
    out.grid_points = static_cast<int>(grid.size());
    out.fd_step = fd_step;
    for (const Point& p : grid) {
        out.pde = std::max(
            out.pde, std::abs(dbar_fd(h, p.z, p.t, fd_step) - target(p.z, p.t)));
        const Point q = gamma_pow(p, 1, params);
        out.invariance =
            std::max(out.invariance, std::abs(h(q.z, q.t) - h(p.z, p.t)));
        if (holo_part)
            out.holo = std::max(
                out.holo, std::abs(dbar_fd(*holo_part, p.z, p.t, fd_step)));
    }
    return out;
}

}  // namespace reebdbar
