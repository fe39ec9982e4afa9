#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>

#include "agfd/errors.hpp"
#include "agfd/rng.hpp"

namespace agfd {

using LogTargetFn = std::function<double(const Eigen::VectorXd&)>;

// Robust adaptive Metropolis configuration. The proposal factor adapts as
//   S_k S_k' = S_{k-1} (I + eta_k (gamma_k - gamma) U U' / |U|^2) S_{k-1}'
// with eta_k = k^(-adaptation_decay) and gamma_k the realized acceptance
// probability.
struct RamConfig {
    long iterations = 5000;            // K
    double target_acceptance = 0.234;  // gamma in (0,1)
    double adaptation_decay = 2.0 / 3.0;  // zeta in (0.5, 1]
    double initial_scale = 0.1;        // S_1 = initial_scale / sqrt(dim) * I
    double burn_in_fraction = 0.2;
    long thinning_stride = 10;
    std::uint64_t seed = 0;
    bool adaptation_enabled = true;    // false freezes S (eta == 0): plain Metropolis

    void validate() const;
};

struct RamState {
    Eigen::VectorXd theta;
    Eigen::MatrixXd factor;  // lower triangular S with positive diagonal
    double log_target_value = 0.0;
    long iteration = 0;
    long accepted = 0;
};

struct ChainResult {
    Eigen::MatrixXd samples;  // one retained draw per row
    double acceptance_rate = 0.0;
    Eigen::VectorXd final_scale_diagonal;
    long retained = 0;
    std::uint64_t seed = 0;
};

// In-place rank-one Cholesky update: L L' + v v' -> L L', keeping L lower
// triangular with positive diagonal.
void cholesky_rank_one_update(Eigen::MatrixXd& factor, Eigen::VectorXd v);

// In-place downdate L L' - v v'; returns false (leaving the factor
// untouched) when the result would not be positive definite.
bool cholesky_rank_one_downdate(Eigen::MatrixXd& factor, Eigen::VectorXd v);

// One RAM transition. `state.log_target_value` must hold
// log_target(state.theta); a failed downdate skips adaptation for the
// step and logs a warning.
RamState ram_step(RamState state, const LogTargetFn& log_target, const RamConfig& config,
                  RngEngine& rng);

// Full chain: runs `iterations` steps from `init`, discards the burn-in
// prefix and retains every stride-th draw. Throws InitializationError if
// the target is -infinity at `init`.
ChainResult run_chain(const LogTargetFn& log_target, const Eigen::VectorXd& init,
                      const RamConfig& config);

// Coordinatewise mean of the retained draws.
Eigen::VectorXd posterior_mean(const Eigen::MatrixXd& samples);

// Small JSON object with the chain diagnostics.
std::string diagnostics_json(const ChainResult& result);

}  // namespace agfd
