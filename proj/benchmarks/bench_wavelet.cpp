#include <benchmark/benchmark.h>

#include <random>

#include "agfd/rng.hpp"
#include "agfd/wavelet.hpp"

namespace {

Eigen::VectorXd random_signal(int m) {
    agfd::RngEngine engine = agfd::make_engine(1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x(i) = normal(engine);
    return x;
}

void ForwardTransform(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const agfd::TransformPlan plan(m, 3, agfd::WaveletFilter::db8);
    const Eigen::VectorXd x = random_signal(m);
    for (auto _ : state) {
        Eigen::VectorXd coeffs = agfd::dwt(x, plan);
        benchmark::DoNotOptimize(coeffs.data());
    }
    state.SetComplexityN(m);
}
BENCHMARK(ForwardTransform)->RangeMultiplier(4)->Range(32, 8192)->Complexity();

void RoundTrip(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const agfd::TransformPlan plan(m, 3, agfd::WaveletFilter::db8);
    const Eigen::VectorXd x = random_signal(m);
    for (auto _ : state) {
        Eigen::VectorXd back = agfd::idwt(agfd::dwt(x, plan), plan);
        benchmark::DoNotOptimize(back.data());
    }
}
BENCHMARK(RoundTrip)->Arg(512)->Arg(2048);

}  // namespace
