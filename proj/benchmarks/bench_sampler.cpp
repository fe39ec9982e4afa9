#include <benchmark/benchmark.h>

#include "agfd/ram.hpp"

namespace {

void RamChainGaussian(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto target = [](const Eigen::VectorXd& theta) { return -0.5 * theta.squaredNorm(); };
    agfd::RamConfig config;
    config.iterations = 2000;
    config.seed = 11;
    for (auto _ : state) {
        agfd::ChainResult result =
            agfd::run_chain(target, Eigen::VectorXd::Constant(dim, 0.5), config);
        benchmark::DoNotOptimize(result.samples.data());
    }
    state.SetComplexityN(dim);
}
BENCHMARK(RamChainGaussian)->RangeMultiplier(2)->Range(2, 64)->Complexity();

}  // namespace
