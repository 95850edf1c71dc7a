// Microbenchmarks for the hot paths: cutoff evaluation, equivariant
// pushdown, and the quadrature kernels that dominate solve time.
#include <benchmark/benchmark.h>

#include <cmath>

#include "reebdbar/solver.hpp"

using namespace reebdbar;

namespace {

const CutoffFamily& family() {
    static const CutoffFamily fam = default_family(0.5);
    return fam;
}

const FoliationParams kParams{0.5};

void BM_Smoothstep(benchmark::State& state) {
    double u = 0.1234;
    for (auto _ : state) {
        u = u < 0.9 ? u + 1e-7 : 0.1234;
        benchmark::DoNotOptimize(smoothstep(u));
    }
}
BENCHMARK(BM_Smoothstep);

void BM_ShellCutoff(benchmark::State& state) {
    const Complex xi{2.3, 1.1};
    for (auto _ : state) benchmark::DoNotOptimize(psi(family(), 3, xi));
}
BENCHMARK(BM_ShellCutoff);

// Equivariant evaluation pays one fundamental_index plus a pow per call;
// the argument depth (orbit distance from the fundamental annulus) is the
// range parameter.
void BM_EquivariantEval(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const double r = 0.9 * std::pow(kParams.lambda, state.range(0));
    const Complex z = std::polar(r, 0.7);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            eval_equivariant(om.coeff, Point{z, 0.1 * r}, kParams));
}
BENCHMARK(BM_EquivariantEval)->Arg(1)->Arg(8)->Arg(32);

void BM_DiscTransform(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const int n = static_cast<int>(state.range(0));
    const PolarQuadSpec spec{n, n, 4.0};
    const Complex z{0.4, -0.3};
    for (auto _ : state)
        benchmark::DoNotOptimize(h_partial(om, 0, z, 0.35, family(), spec));
    state.SetComplexityN(n);
}
BENCHMARK(BM_DiscTransform)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_Obstruction(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const PolarQuadSpec spec{256, 64, 4.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(obstruction(om, family(), spec));
}
BENCHMARK(BM_Obstruction);

void BM_AnnulusSweep(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(annulus_sweep(om, 1, family(), 0.3, n, n));
}
BENCHMARK(BM_AnnulusSweep)->Arg(64)->Arg(128);

void BM_SweepTransformAt(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const AnnulusSweep sweep = annulus_sweep(om, 1, family(), 0.3, 128, 128);
    const Complex z{0.5, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(sweep.transform_at(z));
}
BENCHMARK(BM_SweepTransformAt);

void BM_SweepMoments(benchmark::State& state) {
    const auto om = builtin_form01("omega0");
    const AnnulusSweep sweep = annulus_sweep(om, 1, family(), 0.3, 128, 128);
    for (auto _ : state) benchmark::DoNotOptimize(sweep.moments(128));
}
BENCHMARK(BM_SweepMoments);

void BM_TaylorCoefficients(benchmark::State& state) {
    const auto h = [](Complex z, double t) {
        return std::exp(z) / (1.0 + t * t);
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(
            taylor_coefficients(h, 0.4, Complex{}, 0.5, 64, 256));
}
BENCHMARK(BM_TaylorCoefficients);

}  // namespace

// The distribution's static benchmark_main archive ships LTO bytecode from
// a different compiler minor; expanding the main here and linking the
// shared library sidesteps that.
BENCHMARK_MAIN();
