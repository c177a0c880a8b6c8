// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "mcradar/geometry.hpp"
#include "mcradar/signal.hpp"
#include "mcradar/solver.hpp"

namespace {

mcradar::PartialObservation sampled_instance(int m_antennas, double fraction) {
    mcradar::TargetScene scene;
    scene.angles = {-0.8, 0.1, 0.9};
    scene.reflections.assign(3, mcradar::cdouble(1.0, -0.4));
    scene.speeds.assign(3, 0.0);
    const auto array = mcradar::make_ula(m_antennas, 0.25, 0.5);
    const auto delta = mcradar::data_matrix(array, array, scene);
    const auto total = static_cast<std::size_t>(m_antennas) * m_antennas;
    const auto mask = mcradar::sample_uniform(
        m_antennas, m_antennas, static_cast<std::size_t>(fraction * total), 7);
    return mcradar::observe(delta, mask, 0.0, 7);
}

void CompleteHalfSampled(benchmark::State &state) {
    const auto obs = sampled_instance(static_cast<int>(state.range(0)), 0.5);
    mcradar::SolverParams params;
    params.rel_stop_tol = 1e-4;
    for (auto _ : state) benchmark::DoNotOptimize(mcradar::svt_complete(obs, params));
}
BENCHMARK(CompleteHalfSampled)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
