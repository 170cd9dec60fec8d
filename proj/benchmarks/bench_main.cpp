#include <benchmark/benchmark.h>

#include "superfluid/bethe.hpp"
#include "superfluid/instability.hpp"
#include "superfluid/thermo.hpp"

using namespace superfluid;

static void BM_BetheGround(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bethe::solve_ground({n, static_cast<double>(n), 1.0}).energy);
    state.SetComplexityN(n);
}
BENCHMARK(BM_BetheGround)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_LiebEnergy(benchmark::State& state) {
    const thermo::NystromConfig cfg{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(thermo::energy_density_integral(1.0, 1.0, cfg));
}
BENCHMARK(BM_LiebEnergy)->RangeMultiplier(2)->Range(32, 256);

static void BM_LiebEos(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(thermo::eos_integral_equation(1.0, 1.0).kappa0);
}
BENCHMARK(BM_LiebEos);

static void BM_EnergyIncrement3d(benchmark::State& state) {
    using namespace instability;
    const auto profiles = ProfilePair::cosine_ramps(1.0, 2.0, 3.0);
    const auto bump = PairInteraction::smooth_bump(1.0, 0.5);
    const ShellConfig shells{3, static_cast<double>(state.range(0)), 1.0, 2.0, 3.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(energy_increment({1.0, 0.5, 1.0, {}}, shells, profiles, bump).total());
}
BENCHMARK(BM_EnergyIncrement3d)->Arg(10)->Arg(100)->Arg(1000);
BENCHMARK_MAIN();
