#include <benchmark/benchmark.h>

#include <random>

#include "agfd/rng.hpp"
#include "agfd/shrinkage.hpp"

namespace {

void SingleCoefficient(benchmark::State& state) {
    double d = 0.0;
    for (auto _ : state) {
        d += 0.37;
        if (d > 50.0) d = -50.0;
        benchmark::DoNotOptimize(agfd::shrink_coefficient(d, 1.0, 0.75, 5.0));
    }
}
BENCHMARK(SingleCoefficient);

void PanelLevelDependent(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const agfd::TransformPlan plan(m, 3, agfd::WaveletFilter::db8);
    agfd::RngEngine engine = agfd::make_engine(2);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd panel(m, 16);
    for (int c = 0; c < 16; ++c)
        for (int r = 0; r < m; ++r) panel(r, c) = normal(engine);
    agfd::PriorConfig prior;  // level rule, h = 2
    for (auto _ : state) {
        Eigen::MatrixXd out = agfd::shrink_panel_level_dependent(panel, plan, prior);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(PanelLevelDependent)->Arg(512)->Arg(2048);

void UniversalThreshold(benchmark::State& state) {
    const int m = 2048;
    const agfd::TransformPlan plan(m, 3, agfd::WaveletFilter::db8);
    agfd::RngEngine engine = agfd::make_engine(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd panel(m, 16);
    for (int c = 0; c < 16; ++c)
        for (int r = 0; r < m; ++r) panel(r, c) = normal(engine);
    for (auto _ : state) {
        Eigen::MatrixXd out = agfd::universal_soft_threshold(panel, plan);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(UniversalThreshold);

}  // namespace
