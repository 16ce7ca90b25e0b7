#include <benchmark/benchmark.h>

#include "dicke/dynamics.hpp"

using namespace dicke;

static void BM_CdHamiltonianVariational3(benchmark::State& state)
{
    const DriveParams p = DriveParams::defaults();
    const SpinBasis b(static_cast<int>(state.range(0)));
    const CorrectionScheme scheme = CorrectionScheme::parse("mid-cd3");
    for (auto _ : state)
        benchmark::DoNotOptimize(cd_hamiltonian(p, b, -0.4, scheme));
}
BENCHMARK(BM_CdHamiltonianVariational3)->Arg(2)->Arg(4)->Arg(8);

static void BM_AgpExact(benchmark::State& state)
{
    const DriveParams p = DriveParams::defaults();
    const SpinBasis b(static_cast<int>(state.range(0)));
    const StageControl ctrl = stage_control(p, b, -0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(agp_exact(ctrl.h_a, ctrl.dh, 1e-7));
}
BENCHMARK(BM_AgpExact)->Arg(2)->Arg(4)->Arg(8);

static void BM_EvolveFastScan(benchmark::State& state)
{
    const DriveParams p(10.0, 100.0, 8.8); // alpha = 1.0 chi^2
    const SpinBasis b(static_cast<int>(state.range(0)));
    const CorrectionScheme scheme = CorrectionScheme::parse("off-cd1+mid-cd3");
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evolve(p, b, scheme, initial_css(b), IntegratorConfig{}));
}
BENCHMARK(BM_EvolveFastScan)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
