#include "agfd/ram.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "agfd/log.hpp"

namespace agfd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void RamConfig::validate() const {
    if (iterations < 1) throw InvalidInputError("ram: iterations must be >= 1");
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
        throw InvalidInputError("ram: target acceptance must lie in (0,1)");
    if (!(adaptation_decay > 0.5 && adaptation_decay <= 1.0))
        throw InvalidInputError("ram: adaptation decay must lie in (0.5, 1]");
    if (!(initial_scale > 0.0)) throw InvalidInputError("ram: initial scale must be positive");
    if (!(burn_in_fraction > 0.0 && burn_in_fraction < 1.0))
        throw InvalidInputError("ram: burn-in fraction must lie in (0,1)");
    if (thinning_stride < 1) throw InvalidInputError("ram: thinning stride must be >= 1");
}

void cholesky_rank_one_update(Eigen::MatrixXd& factor, Eigen::VectorXd v) {
    const Eigen::Index n = factor.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lkk = factor(k, k);
        const double r = std::hypot(lkk, v(k));
        const double c = r / lkk;
        const double s = v(k) / lkk;
        factor(k, k) = r;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            factor(i, k) = (factor(i, k) + s * v(i)) / c;
            v(i) = c * v(i) - s * factor(i, k);
        }
    }
}

bool cholesky_rank_one_downdate(Eigen::MatrixXd& factor, Eigen::VectorXd v) {
    const Eigen::Index n = factor.rows();
    Eigen::MatrixXd work = factor;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lkk = work(k, k);
        const double r2 = (lkk - v(k)) * (lkk + v(k));
        if (!(r2 > 0.0)) return false;
        const double r = std::sqrt(r2);
        const double c = r / lkk;
        const double s = v(k) / lkk;
        work(k, k) = r;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            work(i, k) = (work(i, k) - s * v(i)) / c;
            v(i) = c * v(i) - s * work(i, k);
        }
    }
    factor = std::move(work);
    return true;
}

RamState ram_step(RamState state, const LogTargetFn& log_target, const RamConfig& config,
                  RngEngine& rng) {
    const Eigen::Index dim = state.theta.size();
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    Eigen::VectorXd u(dim);
    for (Eigen::Index i = 0; i < dim; ++i) u(i) = normal(rng);

    const Eigen::VectorXd step = state.factor * u;  // triangular, reused in the update
    const Eigen::VectorXd proposal = state.theta + step;
    const double proposal_log_target = log_target(proposal);

    // Realized acceptance probability; exp(-inf) = 0 handles proposals
    // outside the support.
    const double log_ratio = proposal_log_target - state.log_target_value;
    const double accept_prob = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);

    state.iteration += 1;
    if (uniform(rng) < accept_prob) {
        state.theta = proposal;
        state.log_target_value = proposal_log_target;
        state.accepted += 1;
    }

    const double eta = config.adaptation_enabled
                           ? std::pow(static_cast<double>(state.iteration),
                                      -config.adaptation_decay)
                           : 0.0;
    const double gap = eta * (accept_prob - config.target_acceptance);
    const double u_norm2 = u.squaredNorm();
    if (gap != 0.0 && u_norm2 > 0.0) {
        const Eigen::VectorXd v = step * std::sqrt(std::abs(gap) / u_norm2);
        if (gap > 0.0) {
            cholesky_rank_one_update(state.factor, v);
        } else if (!cholesky_rank_one_downdate(state.factor, v)) {
            warn("ram: rank-one downdate not positive definite at iteration " +
                 std::to_string(state.iteration) + "; adaptation skipped");
        }
    }
    return state;
}

ChainResult run_chain(const LogTargetFn& log_target, const Eigen::VectorXd& init,
                      const RamConfig& config) {
    config.validate();
    const Eigen::Index dim = init.size();
    if (dim == 0) throw InvalidInputError("run_chain: empty initial state");

    RamState state;
    state.theta = init;
    state.log_target_value = log_target(init);
    if (state.log_target_value == kNegInf)
        throw InitializationError(
            "run_chain: log target is -inf at the initial state; start inside the "
            "support (see feasible_init)");
    state.factor = Eigen::MatrixXd::Identity(dim, dim) *
                   (config.initial_scale / std::sqrt(static_cast<double>(dim)));

    const long burn_in = static_cast<long>(config.burn_in_fraction * config.iterations);
    const long retained_max =
        (config.iterations - burn_in + config.thinning_stride - 1) / config.thinning_stride;

    ChainResult result;
    result.seed = config.seed;
    result.samples.resize(retained_max, dim);

    RngEngine rng = make_engine(config.seed);
    long retained = 0;
    for (long k = 0; k < config.iterations; ++k) {
        state = ram_step(std::move(state), log_target, config, rng);
        const long post = k - burn_in;
        if (post >= 0 && post % config.thinning_stride == 0) {
            result.samples.row(retained) = state.theta.transpose();
            ++retained;
        }
    }
    result.samples.conservativeResize(retained, dim);
    result.retained = retained;
    result.acceptance_rate =
        static_cast<double>(state.accepted) / static_cast<double>(state.iteration);
    result.final_scale_diagonal = state.factor.diagonal();
    return result;
}

Eigen::VectorXd posterior_mean(const Eigen::MatrixXd& samples) {
    if (samples.rows() == 0) throw InvalidInputError("posterior_mean: no retained samples");
    return samples.colwise().mean().transpose();
}

std::string diagnostics_json(const ChainResult& result) {
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer),
                  "{\"acceptance_rate\": %.6f, \"retained\": %ld, \"seed\": %llu}",
                  result.acceptance_rate, result.retained,
                  static_cast<unsigned long long>(result.seed));
    return buffer;
}

}  // namespace agfd
