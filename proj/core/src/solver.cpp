#include "reebdbar/solver.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace reebdbar {

void SeriesOptions::validate() const {
    if (max_terms < 1)
        throw std::invalid_argument("series: max_terms must be >= 1");
    if (!(obstruction_tol > 0.0))
        throw std::invalid_argument("series: obstruction_tol must be positive");
    if (!(origin_radius > 0.0))
        throw std::invalid_argument("series: origin_radius must be positive");
    if (origin_nodes < 4)
        throw std::invalid_argument("series: need at least four circle nodes");
    if (!(b1_tol > 0.0))
        throw std::invalid_argument("series: b1_tol must be positive");
}

void SolveConfig::validate() const {
    params.validate();
    family.validate();
    quad.validate();
    series.validate();
    runge.validate();
    residual_grid.validate();
    if (family.lambda != params.lambda)
        throw std::invalid_argument(
            "solve: cutoff family and foliation disagree on lambda");
    if (sweep_n_r < 1 || sweep_n_theta < 1)
        throw std::invalid_argument("solve: sweep grid must be nonempty");
    if (j_max < 1 || j_max > 10)
        throw std::invalid_argument("solve: j_max must lie in 1..10");
    if (shell_terms <= runge.degree_cap)
        throw std::invalid_argument(
            "solve: shell_terms must exceed the truncation degree cap");
    if (!(series_tol > 0.0))
        throw std::invalid_argument("solve: series_tol must be positive");
    if (!(fd_step > 0.0))
        throw std::invalid_argument("solve: fd_step must be positive");
    if (!(t_window > 0.0))
        throw std::invalid_argument("solve: t_window must be positive");
    if (n_t_samples < 2)
        throw std::invalid_argument("solve: need at least two t samples");
}

namespace {

struct ShellKey {
    int j;
    double t;
    bool operator==(const ShellKey&) const = default;
};

struct ShellKeyHash {
    std::size_t operator()(const ShellKey& k) const {
        return std::hash<double>{}(k.t) ^
               (static_cast<std::size_t>(k.j) * 0x9e3779b97f4a7c15ull);
    }
};

// Per-(shell, t) Taylor coefficients of the shell transform about z = 0.
// One entry is shell_terms+1 complex numbers, so the cache stays small even
// across the distinct t values the deep orbit evaluations produce.
class ShellCache {
public:
    ShellCache(LeafwiseForm01 f, CutoffFamily family, int n_r, int n_theta,
               int terms)
        : f_(std::move(f)), family_(std::move(family)), n_r_(n_r),
          n_theta_(n_theta), terms_(terms) {}

    std::shared_ptr<const std::vector<Complex>> coefficients(int j, double t) {
        const ShellKey key{j, t};
        {
            std::lock_guard lk(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto coeffs = std::make_shared<const std::vector<Complex>>(
            annulus_sweep(f_, j, family_, t, n_r_, n_theta_).moments(terms_));
        std::lock_guard lk(mu_);
        return cache_.emplace(key, std::move(coeffs)).first->second;
    }

private:
    LeafwiseForm01 f_;
    CutoffFamily family_;
    int n_r_;
    int n_theta_;
    int terms_;
    std::mutex mu_;
    std::unordered_map<ShellKey, std::shared_ptr<const std::vector<Complex>>,
                       ShellKeyHash>
        cache_;
};

struct EvalCore {
    LeafwiseForm01 f;
    CutoffFamily family;
    PolarQuadSpec quad;
    std::vector<PolyInZ> v;
    std::vector<int> degrees;
    std::vector<double> safe;     // Taylor branch radius per shell
    std::vector<double> support;  // outer support edge per shell
    std::shared_ptr<ShellCache> cache;
};

const std::array<Point, 4>& probe_points() {
    static const std::array<Point, 4> pts = {
        Point{Complex{0.8, 0.0}, 0.4},
        Point{std::polar(0.5, 1.0), -0.7},
        Point{std::polar(0.75, 2.5), 0.25},
        Point{std::polar(0.35, 4.0), 0.85},
    };
    return pts;
}

// Smallest N such that the sup over the sample points of the series term
// stayed below tol five times in a row, ending at N.  The count is frozen
// before any grid evaluation so the summed object stays smooth in (z, t);
// stopping per point would put jumps of size ~tol right where the finite
// differences look.
int probe_terms(const std::function<Complex(int, const Point&)>& term,
                double tol, int max_terms, bool suggest_polyseries) {
    constexpr int kSettled = 5;
    int consecutive = 0;
    for (int n = 0; n < max_terms; ++n) {
        double sup = 0.0;
        for (const Point& p : probe_points())
            sup = std::max(sup, std::abs(term(n, p)));
        consecutive = sup < tol ? consecutive + 1 : 0;
        if (consecutive >= kSettled) return n;
    }
    std::ostringstream msg;
    msg << "correction series did not settle: no run of " << kSettled
        << " sample terms below " << tol << " within " << max_terms
        << " terms";
    if (suggest_polyseries)
        msg << "; polyseries mode telescopes the sum through the truncation "
               "polynomials and settles whenever they exist";
    throw ConvergenceError(msg.str());
}

Complex puncture_mean_or_throw(const LeafwiseFn& H, const SeriesOptions& series,
                               const char* who) {
    Complex mean;
    try {
        mean = hartogs_extend(H, Complex{}, series.origin_radius, 0.0,
                              series.origin_nodes, series.b1_tol);
    } catch (const NotRemovableError& e) {
        std::ostringstream msg;
        msg << who << ": the defect has a genuine singularity at the puncture ("
            << e.what() << ")";
        throw ObstructionError(msg.str(), Complex{});
    }
    if (std::abs(mean) > series.obstruction_tol) {
        std::ostringstream msg;
        msg << who << ": puncture value " << std::abs(mean) << " exceeds "
            << series.obstruction_tol << "; the input carries a nonzero class";
        throw ObstructionError(msg.str(), mean);
    }
    return mean;
}

}  // namespace

AssembledHTilde assemble_htilde(const LeafwiseForm01& f,
                                const SolveConfig& cfg) {
    cfg.validate();
    const auto t_samples = uniform_t_samples(cfg.t_window, cfg.n_t_samples);
    const auto exhaustion = make_exhaustion(cfg.family.R, cfg.params.lambda,
                                            cfg.j_max, 64, 64, t_samples);

    auto core = std::make_shared<EvalCore>();
    core->f = f;
    core->family = cfg.family;
    core->quad = cfg.quad;
    core->cache = std::make_shared<ShellCache>(
        f, cfg.family, cfg.sweep_n_r, cfg.sweep_n_theta, cfg.shell_terms);

    AssembledHTilde out;
    out.j_max = cfg.j_max;
    PolarQuadSpec sweep_spec{cfg.sweep_n_r, cfg.sweep_n_theta, 1.0};
    for (int j = 1; j <= cfg.j_max; ++j) {
        const Annulus ann = support_annulus(cfg.family, j);
        sweep_spec.r_max = ann.outer;
        RungeResult rr = truncate_runge(f, j, cfg.family, sweep_spec,
                                        exhaustion, t_samples, cfg.runge);
        out.v.push_back(rr.poly);
        out.degrees.push_back(rr.degree);
        out.runge_bounds.push_back(rr.certified_bound);
        core->v.push_back(std::move(rr.poly));
        core->degrees.push_back(rr.degree);
        core->safe.push_back(0.8 * ann.inner);
        core->support.push_back(ann.outer);
    }

    out.eval = [core](Complex z, double t) -> Complex {
        Complex acc = h_partial(core->f, 0, z, t, core->family, core->quad);
        const double az = std::abs(z);
        for (int j = 1; j <= static_cast<int>(core->v.size()); ++j) {
            if (az <= core->safe[j - 1]) {
                // h_j - v_j as the tail of one expansion: no cancellation,
                // and the seeded polynomial coefficients are bitwise the
                // leading entries of the same moment vector.
                const auto coeffs = core->cache->coefficients(j, t);
                const int d = core->degrees[j - 1];
                Complex tail{};
                for (int k = static_cast<int>(coeffs->size()) - 1; k > d; --k)
                    tail = tail * z + (*coeffs)[k];
                for (int k = 0; k <= d; ++k) tail *= z;
                acc += tail;
            } else {
                // Off the expansion disc: direct quadrature, radially
                // extended so the shell's support is always reached.
                PolarQuadSpec reach = core->quad;
                reach.r_max = std::max(reach.r_max, core->support[j - 1] + az);
                acc += h_partial(core->f, j, z, t, core->family, reach) -
                       core->v[j - 1](z, t);
            }
        }
        return acc;
    };
    return out;
}

LeafwiseFn coboundary(const LeafwiseFn& htilde, const FoliationParams& params) {
    params.validate();
    if (!htilde) throw std::invalid_argument("coboundary: missing evaluator");
    return [htilde, L = params.lambda](Complex z, double t) {
        return htilde(L * z, L * t) - htilde(z, t);
    };
}

Complex obstruction(const LeafwiseForm01& f, const CutoffFamily& family,
                    const PolarQuadSpec& quad) {
    family.validate();
    quad.validate();
    const Annulus ann = support_annulus(family, 1);
    if (quad.r_max < ann.outer) {
        std::ostringstream msg;
        msg << "obstruction: r_max = " << quad.r_max
            << " is below the outer support edge " << ann.outer;
        throw CoverageError(msg.str());
    }
    const FoliationParams params{family.lambda};
    auto coeff = bind(f.coeff, params);
    auto integrand = [&](Complex xi) -> Complex {
        const double cut = psi(family, 1, xi);
        if (cut == 0.0) return {};
        return cut * coeff(xi, 0.0) / xi;
    };
    return area_integral(integrand, quad, ann.inner, ann.outer);
}

LeafwiseFn solve_cohomological(const LeafwiseFn& H,
                               const FoliationParams& params, double tol,
                               KMode mode, const std::vector<PolyInZ>* v_js,
                               const SeriesOptions& series) {
    params.validate();
    series.validate();
    if (!H) throw std::invalid_argument("solve_cohomological: missing defect");
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_cohomological: tol must be positive");
    if (mode == KMode::polyseries && (!v_js || v_js->empty()))
        throw std::invalid_argument(
            "solve_cohomological: polyseries mode needs the truncation "
            "polynomials");

    puncture_mean_or_throw(H, series, "solve_cohomological");

    const double L = params.lambda;
    if (mode == KMode::direct) {
        auto term = [&H, L](int n, const Point& p) {
            const double s = std::pow(L, n);
            return H(s * p.z, s * p.t);
        };
        const int N = probe_terms(term, tol, series.max_terms, true);
        return [H, L, N](Complex z, double t) {
            Complex acc{};
            Complex zz = z;
            double tt = t;
            for (int n = 0; n <= N; ++n) {
                acc += H(zz, tt);
                zz *= L;
                tt *= L;
            }
            return acc;
        };
    }

    const std::vector<PolyInZ> vs = *v_js;
    auto term = [&vs, L](int n, const Point& p) {
        const double s = std::pow(L, n);
        const double s1 = s * L;
        Complex acc{};
        for (const auto& vj : vs)
            acc += vj(s1 * p.z, s1 * p.t) - vj(s * p.z, s * p.t);
        return -acc;
    };
    const int N = probe_terms(term, tol, series.max_terms, false);
    // The n-sum telescopes per polynomial; the closed form is exact at any
    // term count, so it replaces the literal partial sum.
    return [vs, L, N](Complex z, double t) {
        const double s = std::pow(L, N + 1);
        Complex acc{};
        for (const auto& vj : vs) acc += vj(z, t) - vj(s * z, s * t);
        return acc;
    };
}

Complex hartogs_extend(const LeafwiseFn& f, Complex center, double radius,
                       double t, int n_nodes, double b1_tol) {
    if (!(b1_tol > 0.0))
        throw std::invalid_argument("hartogs_extend: b1_tol must be positive");
    const Complex b1 = contour_coefficient(f, t, center, radius, 1,
                                           CoefficientKind::laurent, n_nodes);
    if (std::abs(b1) > b1_tol) {
        std::ostringstream msg;
        msg << "hartogs_extend: first Laurent coefficient has magnitude "
            << std::abs(b1) << " (tolerance " << b1_tol
            << "); the singularity is genuine";
        throw NotRemovableError(msg.str(), std::abs(b1));
    }
    return contour_coefficient(f, t, center, radius, 0,
                               CoefficientKind::taylor, n_nodes);
}

SolveReport decompose(const LeafwiseForm01& f, const SolveConfig& cfg) {
    cfg.validate();
    SolveReport report;

    const LeafwiseForm01 omega0 = builtin_form01("omega0");
    const Complex If = obstruction(f, cfg.family, cfg.quad);
    const Complex Iw = obstruction(omega0, cfg.family, cfg.quad);
    const Complex c = If / Iw;
    report.class_coeff = c;
    report.diagnostics.obstruction_f = If;
    report.diagnostics.obstruction_omega0 = Iw;

    // Subtract the class part; everything after this line works on a form
    // whose pairing vanishes, which is exactly what makes the correction
    // series geometric.
    const LeafwiseForm01 fprime{combine(f.coeff, omega0.coeff, Complex{1.0, 0.0},
                                        -c)};

    AssembledHTilde asmb = assemble_htilde(fprime, cfg);
    report.diagnostics.runge_degrees = asmb.degrees;
    report.diagnostics.runge_bounds = asmb.runge_bounds;

    const LeafwiseFn H = coboundary(asmb.eval, cfg.params);
    const Complex mean = puncture_mean_or_throw(H, cfg.series, "decompose");
    report.diagnostics.h00 = std::abs(mean);

    const double L = cfg.params.lambda;
    int N = 0;
    if (cfg.k_mode == KMode::direct) {
        auto term = [&H, L](int n, const Point& p) {
            const double s = std::pow(L, n);
            return H(s * p.z, s * p.t);
        };
        N = probe_terms(term, cfg.series_tol, cfg.series.max_terms, true);
    } else {
        auto term = [&vs = asmb.v, L](int n, const Point& p) {
            const double s = std::pow(L, n);
            const double s1 = s * L;
            Complex acc{};
            for (const auto& vj : vs)
                acc += vj(s1 * p.z, s1 * p.t) - vj(s * p.z, s * p.t);
            return -acc;
        };
        N = probe_terms(term, cfg.series_tol, cfg.series.max_terms, false);
    }
    report.diagnostics.series_terms = N;

    const double scale = std::pow(L, N + 1);
    LeafwiseFn praw;
    if (cfg.k_mode == KMode::direct) {
        // htilde + sum_{n<=N} H(gamma^n .) collapses term by term to a single
        // evaluation deep in the orbit; one transform instead of N+2.
        praw = [heval = asmb.eval, scale](Complex z, double t) {
            return heval(scale * z, scale * t);
        };
    } else {
        praw = [heval = asmb.eval, vs = asmb.v, scale](Complex z, double t) {
            Complex acc = heval(z, t);
            for (const auto& vj : vs) acc += vj(z, t) - vj(scale * z, scale * t);
            return acc;
        };
    }

    const auto grid = shell_grid(cfg.residual_grid, cfg.params);
    report.residuals =
        residual_report(fprime, praw, grid, cfg.params, cfg.fd_step, &H);

    report.primitive = EquivariantFunction{0, praw};
    report.primitive_raw = std::move(praw);
    return report;
}

}  // namespace reebdbar
