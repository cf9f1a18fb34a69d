// Serial reference vs OpenMP for the two data-parallel kernels.
#include "nmc/entanglement.hpp"
#include "nmc/kernels.hpp"
#include "nmc/propagator.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<nmc::cplx> make_series(std::size_t n, double rate)
{
    std::vector<nmc::cplx> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = std::polar(1.0 / (1.0 + 1e-3 * static_cast<double>(k)), rate * static_cast<double>(k));
    return v;
}

template <nmc::kernels::Backend B>
void BM_HistorySum(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto kernel = make_series(m + 1, 0.03);
    const auto y = make_series(m, -0.0015);
    for (auto _ : state)
        benchmark::DoNotOptimize(nmc::kernels::history_sum(B, kernel, y, m));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(m));
}

template <nmc::kernels::Backend B>
void BM_SolveCenter(benchmark::State& state)
{
    const nmc::ModelConfig cfg{1.0, 0.5, static_cast<double>(state.range(0)), 1e-3};
    const auto weights = nmc::build_product_weights(nmc::SpectralDensity::ohmic(0.005, 30.0), cfg.dt,
                                                    cfg.steps() + 1, cfg.center_frequency());
    for (auto _ : state)
        benchmark::DoNotOptimize(nmc::solve_center_amplitude(weights, cfg, B));
}

template <nmc::kernels::Backend B>
void BM_EntanglementSeries(benchmark::State& state)
{
    const nmc::ModelConfig cfg{1.0, 0.5, static_cast<double>(state.range(0)), 1e-3};
    const auto traj =
        nmc::assemble_trajectory(nmc::solve_center_amplitude(nmc::SpectralDensity::ohmic(0.0, 30.0), cfg), cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(nmc::entanglement_series(traj, 3.0, B));
}

using nmc::kernels::Backend;

} // namespace

BENCHMARK(BM_HistorySum<Backend::serial>)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);
BENCHMARK(BM_HistorySum<Backend::openmp>)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);
BENCHMARK(BM_SolveCenter<Backend::serial>)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveCenter<Backend::openmp>)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EntanglementSeries<Backend::serial>)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EntanglementSeries<Backend::openmp>)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
