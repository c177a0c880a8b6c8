// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "mcradar/bounds.hpp"
#include "mcradar/geometry.hpp"

namespace {

void KernelSupremum(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mcradar::beta_sup_finite(m, 0.05));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(KernelSupremum)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void GeneralKernelPoint(benchmark::State &state) {
    const auto geom = mcradar::make_uca(static_cast<int>(state.range(0)), 0.5, 0.5);
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mcradar::phi_general(geom, x, 0.4));
        x += 1e-6;
    }
}
BENCHMARK(GeneralKernelPoint)->Arg(20)->Arg(64);

void GeneralKernelSupremum(benchmark::State &state) {
    const auto geom = mcradar::make_uca(20, 0.5, 0.5);
    const auto band = mcradar::AdmissibleSet::banded(1.0);
    const double resolution = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mcradar::general_beta(geom, band, resolution));
}
BENCHMARK(GeneralKernelSupremum)->Arg(100)->Arg(200)->Arg(400);

} // namespace
