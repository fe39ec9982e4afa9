#include <benchmark/benchmark.h>

#include "agfd/noise.hpp"

namespace {

void ArfimaHosking(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const agfd::ArfimaNoiseSpec spec{0.4, 1.0};
    for (auto _ : state) {
        Eigen::MatrixXd panel = agfd::gen_arfima_panel(spec, n, 1, 7);
        benchmark::DoNotOptimize(panel.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(ArfimaHosking)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void Ar1Panel(benchmark::State& state) {
    const agfd::Ar1NoiseSpec spec{0.5, 1.0};
    for (auto _ : state) {
        Eigen::MatrixXd panel = agfd::gen_ar1_panel(spec, 2048, 16, 7);
        benchmark::DoNotOptimize(panel.data());
    }
}
BENCHMARK(Ar1Panel);

}  // namespace
