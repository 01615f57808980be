// Serial reference vs OpenMP grid kernels for the inversion sums.

#include <benchmark/benchmark.h>

#include <cmath>

#include "dqed/jc_model.hpp"
#include "dqed/kernels.hpp"

namespace {

const dqed::PhysParams kParams = dqed::default_params();

std::vector<double> drive_for(const std::vector<double>& t)
{
    std::vector<double> nbb(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) nbb[k] = 16.0 * t[k] * t[k];
    return nbb;
}

void BM_StandardSerial(benchmark::State& state)
{
    const auto t = dqed::make_grid(0.0, 100.0, static_cast<std::size_t>(state.range(0)));
    const int n_max = dqed::poisson_truncation(kParams.mean_photons());
    for (auto _ : state) benchmark::DoNotOptimize(dqed::serial::standard_inversion(t, kParams, n_max));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StandardParallel(benchmark::State& state)
{
    const auto t = dqed::make_grid(0.0, 100.0, static_cast<std::size_t>(state.range(0)));
    const int n_max = dqed::poisson_truncation(kParams.mean_photons());
    for (auto _ : state) benchmark::DoNotOptimize(dqed::parallel::standard_inversion(t, kParams, n_max));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ModifiedSerial(benchmark::State& state)
{
    const auto t = dqed::make_grid(0.0, 100.0, static_cast<std::size_t>(state.range(0)));
    const auto nbb = drive_for(t);
    const int n_max = dqed::poisson_truncation(kParams.mean_photons());
    for (auto _ : state) benchmark::DoNotOptimize(dqed::serial::modified_inversion(t, nbb, kParams, n_max));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ModifiedParallel(benchmark::State& state)
{
    const auto t = dqed::make_grid(0.0, 100.0, static_cast<std::size_t>(state.range(0)));
    const auto nbb = drive_for(t);
    const int n_max = dqed::poisson_truncation(kParams.mean_photons());
    for (auto _ : state) benchmark::DoNotOptimize(dqed::parallel::modified_inversion(t, nbb, kParams, n_max));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_StandardSerial)->Arg(5'000)->Arg(50'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StandardParallel)->Arg(5'000)->Arg(50'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModifiedSerial)->Arg(5'000)->Arg(50'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModifiedParallel)->Arg(5'000)->Arg(50'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
