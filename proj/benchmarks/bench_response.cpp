#include "magmech/analysis.hpp"
#include "magmech/oracle.hpp"
#include "magmech/presets.hpp"
#include "magmech/response.hpp"
#include "magmech/steady_state.hpp"

#include <benchmark/benchmark.h>

using namespace magmech;

namespace {

const LinearizedModel& coupled() {
    static const LinearizedModel m = build_model(find_preset("fig2f").series.front().params);
    return m;
}

void BM_ChainPoint(benchmark::State& state) {
    const auto& m = coupled();
    double delta = 0.99 * m.omega_b;
    for (auto _ : state) {
        benchmark::DoNotOptimize(probe_sideband_amplitude(m, delta));
        delta += 1e-9;
    }
}
BENCHMARK(BM_ChainPoint);

void BM_OraclePoint(benchmark::State& state) {
    const auto& m = coupled();
    double delta = 0.99 * m.omega_b;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_sideband_amplitude(m, delta));
        delta += 1e-9;
    }
}
BENCHMARK(BM_OraclePoint);

void BM_Sweep(benchmark::State& state) {
    const auto& m = coupled();
    const SweepSpec spec{0.0, 2.0 * m.omega_b, 2001, static_cast<Method>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_spectrum(m, spec));
    }
    state.SetItemsProcessed(state.iterations() * spec.n_points);
}
BENCHMARK(BM_Sweep)->Arg(static_cast<int>(Method::Chain))->Arg(static_cast<int>(Method::Oracle))
    ->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
    auto p = table1_params();
    p.mode = ParamMode::FirstPrinciples;
    const auto drive = derive_drive(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_steady_state(p, drive));
    }
}
BENCHMARK(BM_SteadyState);

}  // namespace
BENCHMARK_MAIN();
