// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "mcradar/coherence.hpp"
#include "mcradar/geometry.hpp"
#include "mcradar/signal.hpp"

namespace {

mcradar::TargetScene four_targets() {
    mcradar::TargetScene scene;
    scene.angles = {-0.9, -0.2, 0.5, 1.1};
    scene.reflections.assign(4, mcradar::cdouble(1.0, 0.3));
    scene.speeds.assign(4, 0.0);
    return scene;
}

void DataMatrix(benchmark::State &state) {
    const auto array = mcradar::make_ula(static_cast<int>(state.range(0)), 0.25, 0.5);
    const auto scene = four_targets();
    for (auto _ : state) benchmark::DoNotOptimize(mcradar::data_matrix(array, array, scene));
}
BENCHMARK(DataMatrix)->Arg(32)->Arg(64)->Arg(128);

void FullCoherenceReport(benchmark::State &state) {
    const auto array = mcradar::make_ula(static_cast<int>(state.range(0)), 0.25, 0.5);
    const auto delta = mcradar::data_matrix(array, array, four_targets());
    for (auto _ : state) benchmark::DoNotOptimize(mcradar::coherence_report(delta));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FullCoherenceReport)->RangeMultiplier(2)->Range(16, 128)->Complexity();

} // namespace
