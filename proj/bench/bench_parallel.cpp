// SPDX-License-Identifier: MIT
// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <vector>

#include "certistoch/monte_carlo.hpp"
#include "certistoch/series_model.hpp"
#include "certistoch/validation.hpp"

using namespace certistoch;

namespace {

const Sampler& demo_sampler() {
    static const Sampler s = DemoIntegral{1, 0.5}.sampler();
    return s;
}

void BM_McSerial(benchmark::State& st) {
    const auto n = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(run_certified_serial(demo_sampler(), n, 1).estimate);
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_McParallel(benchmark::State& st) {
    const auto n = st.range(0);
    const int workers = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(run_certified(demo_sampler(), n, 1, workers).estimate);
    st.SetItemsProcessed(st.iterations() * n);
}

std::vector<double> unit_grid(int points) {
    std::vector<double> g(points);
    for (int j = 0; j < points; ++j) g[j] = j / double(points - 1);
    return g;
}

void BM_SimulateSerial(benchmark::State& st) {
    SeriesModel m;
    m.N = st.range(0);
    const auto grid = unit_grid(200);
    for (auto _ : st) benchmark::DoNotOptimize(simulate_serial(m, grid, 256).values.data());
    st.SetItemsProcessed(st.iterations() * 256);
}

void BM_SimulateParallel(benchmark::State& st) {
    SeriesModel m;
    m.N = st.range(0);
    const auto grid = unit_grid(200);
    const int workers = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(simulate(m, grid, 256, workers).values.data());
    st.SetItemsProcessed(st.iterations() * 256);
}

}  // namespace

BENCHMARK(BM_McSerial)->Arg(1 << 22)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McParallel)->Args({1 << 22, 2})->Args({1 << 22, 4})->Args({1 << 22, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateSerial)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateParallel)->Args({1000, 2})->Args({1000, 4})->Args({1000, 8})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
