#include "helmstab/helmstab.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace helmstab;

namespace {

SourcePair truth(const SourceGrid& grid) {
    const std::vector<Bump> b0{{-0.4, 0.25, 1.0}};
    const std::vector<Bump> b1{{0.35, 0.3, 0.8}};
    return make_bump_pair(grid, b0, b1);
}

void BM_green(benchmark::State& state) {
    const MediumConfig cfg(1.0, 1.5, 0.5);
    double y = -0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(green(cfg, 12.5, 0.3, y));
        y = y > 0.9 ? -0.9 : y + 1e-3;
    }
}
BENCHMARK(BM_green);

void BM_boundary_data(benchmark::State& state) {
    const double K = static_cast<double>(state.range(0));
    const MediumConfig cfg(1.0, 1.5, 0.5);
    const auto grid = SourceGrid::resolving(cfg.c_max() * K);
    const auto sp = truth(grid);
    const auto omegas = uniform_omegas_spacing(K, inversion_omega_spacing(cfg));
    for (auto _ : state) benchmark::DoNotOptimize(boundary_data(cfg, sp, omegas));
    state.counters["n"] = static_cast<double>(grid.n());
    state.counters["omegas"] = static_cast<double>(omegas.size());
}
BENCHMARK(BM_boundary_data)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_assemble_factor(benchmark::State& state) {
    const double K = static_cast<double>(state.range(0));
    const MediumConfig cfg(1.0, 1.5, 0.5);
    const auto grid = SourceGrid::resolving(cfg.c_max() * K);
    const auto omegas = uniform_omegas_spacing(K, inversion_omega_spacing(cfg));
    for (auto _ : state) {
        const TikhonovSolver solver(assemble(cfg, grid, omegas));
        benchmark::DoNotOptimize(solver.matrix_norm());
    }
}
BENCHMARK(BM_assemble_factor)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_invert(benchmark::State& state) {
    const double K = static_cast<double>(state.range(0));
    const MediumConfig cfg(1.0, 1.5, 0.5);
    const auto grid = SourceGrid::resolving(cfg.c_max() * K);
    const auto sp = truth(grid);
    const auto omegas = uniform_omegas_spacing(K, inversion_omega_spacing(cfg));
    const TikhonovSolver solver(assemble(cfg, grid, omegas));
    const auto noisy = add_noise(boundary_data(cfg, sp, omegas), 1e-6, 1);
    for (auto _ : state) benchmark::DoNotOptimize(invert(solver, noisy, 1e-3, &sp));
}
BENCHMARK(BM_invert)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_solve_wave(benchmark::State& state) {
    const MediumConfig cfg(1.0, 1.0, 0.5);
    const auto sp = truth(SourceGrid(1025));
    WaveOptions opts;
    opts.h = 1.0 / static_cast<double>(state.range(0));
    opts.dt = 0.8 * opts.h;
    for (auto _ : state) benchmark::DoNotOptimize(solve_wave(cfg, sp, opts));
}
BENCHMARK(BM_solve_wave)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
