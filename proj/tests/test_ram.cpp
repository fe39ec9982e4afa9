#include <doctest.h>

#include <cmath>
#include <random>

#include "agfd/ram.hpp"

using namespace agfd;

namespace {

Eigen::MatrixXd random_lower_triangular(int n, std::uint64_t seed) {
    RngEngine engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> diag(0.5, 2.0);
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) lower(i, j) = normal(engine);
        lower(i, i) = diag(engine);
    }
    return lower;
}

double standard_normal_log_density(const Eigen::VectorXd& theta) {
    return -0.5 * theta.squaredNorm();
}

bool lower_triangular_positive_diag(const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (!(m(i, i) > 0.0)) return false;
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != 0.0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("ram");

TEST_CASE("rank-one cholesky update matches the dense product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 6);
        Eigen::MatrixXd factor = random_lower_triangular(n, 100 + seed);
        RngEngine engine = make_engine(200 + seed);
        std::normal_distribution<double> normal(0.0, 0.5);
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = normal(engine);

        const Eigen::MatrixXd expected = factor * factor.transpose() + v * v.transpose();
        cholesky_rank_one_update(factor, v);
        CHECK(lower_triangular_positive_diag(factor));
        CHECK((factor * factor.transpose() - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("rank-one cholesky downdate matches the dense product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 6);
        Eigen::MatrixXd factor = random_lower_triangular(n, 300 + seed);
        // Build a v small enough to keep the downdated matrix positive
        // definite: v = c * (factor * u) with |c| < 1 and unit u.
        RngEngine engine = make_engine(400 + seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd u(n);
        for (int i = 0; i < n; ++i) u(i) = normal(engine);
        u.normalize();
        const Eigen::VectorXd v = 0.6 * (factor * u);

        const Eigen::MatrixXd expected = factor * factor.transpose() - v * v.transpose();
        REQUIRE(cholesky_rank_one_downdate(factor, v));
        CHECK(lower_triangular_positive_diag(factor));
        CHECK((factor * factor.transpose() - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("impossible downdate reports failure and leaves the factor alone") {
    Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXd before = factor;
    Eigen::VectorXd v(3);
    v << 2.0, 0.0, 0.0;  // |v| exceeds the factor's reach
    CHECK_FALSE(cholesky_rank_one_downdate(factor, v));
    CHECK((factor - before).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ram step implements the adaptation identity") {
    // Replay the step's random draws to rebuild the right-hand side
    // S (I + eta (gamma_k - gamma) U U' / |U|^2) S' densely.
    const int dim = 5;
    RamConfig config;
    config.target_acceptance = 0.234;

    RamState state;
    state.theta = Eigen::VectorXd::Zero(dim);
    state.factor = random_lower_triangular(dim, 77);
    state.log_target_value = standard_normal_log_density(state.theta);
    state.iteration = 9;  // next step adapts with eta = 10^(-2/3)

    const Eigen::MatrixXd s_before = state.factor;
    RngEngine replay = make_engine(1234);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd u(dim);
    for (int i = 0; i < dim; ++i) u(i) = normal(replay);
    const Eigen::VectorXd proposal = state.theta + s_before * u;
    const double accept_prob =
        std::min(1.0, std::exp(standard_normal_log_density(proposal) - state.log_target_value));
    const double eta = std::pow(10.0, -config.adaptation_decay);

    RngEngine rng = make_engine(1234);
    const RamState next = ram_step(std::move(state), standard_normal_log_density, config, rng);

    const Eigen::MatrixXd rhs =
        s_before *
        (Eigen::MatrixXd::Identity(dim, dim) +
         eta * (accept_prob - config.target_acceptance) * (u * u.transpose()) / u.squaredNorm()) *
        s_before.transpose();
    CHECK((next.factor * next.factor.transpose() - rhs).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(lower_triangular_positive_diag(next.factor));
}

TEST_CASE("frozen adaptation leaves the factor untouched") {
    RamConfig config;
    config.adaptation_enabled = false;
    RamState state;
    state.theta = Eigen::VectorXd::Zero(3);
    state.factor = random_lower_triangular(3, 5);
    state.log_target_value = standard_normal_log_density(state.theta);
    const Eigen::MatrixXd before = state.factor;
    RngEngine rng = make_engine(9);
    for (int k = 0; k < 50; ++k) {
        state = ram_step(std::move(state), standard_normal_log_density, config, rng);
        CHECK((state.factor - before).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("flat target accepts every proposal") {
    const auto flat = [](const Eigen::VectorXd&) { return 0.0; };
    RamConfig config;
    RamState state;
    state.theta = Eigen::VectorXd::Zero(2);
    state.factor = Eigen::MatrixXd::Identity(2, 2);
    state.log_target_value = 0.0;
    RngEngine rng = make_engine(21);
    for (int k = 0; k < 25; ++k) state = ram_step(std::move(state), flat, config, rng);
    CHECK(state.accepted == 25);
}

TEST_CASE("factor stays lower triangular with positive diagonal over long runs") {
    RamConfig config;
    RamState state;
    state.theta = Eigen::VectorXd::Ones(4);
    state.factor = Eigen::MatrixXd::Identity(4, 4) * 0.05;
    state.log_target_value = standard_normal_log_density(state.theta);
    RngEngine rng = make_engine(33);
    for (int k = 0; k < 100000; ++k) {
        state = ram_step(std::move(state), standard_normal_log_density, config, rng);
        if (k % 997 == 0) CHECK(lower_triangular_positive_diag(state.factor));
    }
    CHECK(lower_triangular_positive_diag(state.factor));
}

TEST_CASE("chain on a 2-d standard normal calibrates and centers") {
    RamConfig config;
    config.iterations = 200000;
    config.seed = 424242;
    ChainResult result = run_chain(standard_normal_log_density, Eigen::VectorXd::Ones(2), config);

    CHECK(std::abs(result.acceptance_rate - 0.234) < 0.05);
    CHECK(result.retained == 16000);

    const Eigen::VectorXd mean = posterior_mean(result.samples);
    for (int i = 0; i < 2; ++i) {
        const double sd = std::sqrt(
            (result.samples.col(i).array() - mean(i)).square().sum() / (result.retained - 1.0));
        const double mc_se = sd / std::sqrt(static_cast<double>(result.retained));
        CHECK(std::abs(mean(i)) < 3.0 * mc_se);
    }
}

TEST_CASE("frozen-proposal metropolis recovers the target variance") {
    RamConfig config;
    config.iterations = 1000000;
    config.adaptation_enabled = false;
    config.initial_scale = 2.38;  // near-optimal fixed scale in 1-D
    config.seed = 7;
    const ChainResult result =
        run_chain(standard_normal_log_density, Eigen::VectorXd::Zero(1), config);
    const double mean = result.samples.col(0).mean();
    const double var =
        (result.samples.col(0).array() - mean).square().sum() / (result.retained - 1.0);
    CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("chains are deterministic under a fixed seed") {
    RamConfig config;
    config.iterations = 5000;
    config.seed = 99;
    const ChainResult a = run_chain(standard_normal_log_density, Eigen::VectorXd::Ones(3), config);
    const ChainResult b = run_chain(standard_normal_log_density, Eigen::VectorXd::Ones(3), config);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.acceptance_rate == b.acceptance_rate);
}

TEST_CASE("infeasible start is rejected with guidance") {
    const auto target = [](const Eigen::VectorXd& theta) {
        return theta(0) > 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    };
    RamConfig config;
    CHECK_THROWS_AS(run_chain(target, Eigen::VectorXd::Constant(1, -1.0), config),
                    InitializationError);
}

TEST_CASE("posterior mean") {
    Eigen::MatrixXd one(1, 3);
    one << 1.0, -2.0, 0.5;
    CHECK((posterior_mean(one) - one.row(0).transpose()).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd pair(2, 3);
    pair.row(0) << 1.0, -2.0, 0.5;
    pair.row(1) = -pair.row(0);
    CHECK(posterior_mean(pair).cwiseAbs().maxCoeff() == 0.0);

    // Streaming-sum oracle on a toy chain.
    RamConfig config;
    config.iterations = 2000;
    config.seed = 5;
    const ChainResult chain =
        run_chain(standard_normal_log_density, Eigen::VectorXd::Zero(2), config);
    Eigen::VectorXd streaming = Eigen::VectorXd::Zero(2);
    for (long r = 0; r < chain.retained; ++r) streaming += chain.samples.row(r).transpose();
    streaming /= static_cast<double>(chain.retained);
    CHECK((posterior_mean(chain.samples) - streaming).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(posterior_mean(Eigen::MatrixXd(0, 3)), InvalidInputError);
}

TEST_CASE("diagnostics serialize to json") {
    ChainResult result;
    result.acceptance_rate = 0.25;
    result.retained = 100;
    result.seed = 7;
    const std::string json = diagnostics_json(result);
    CHECK(json.find("\"acceptance_rate\": 0.250000") != std::string::npos);
    CHECK(json.find("\"retained\": 100") != std::string::npos);
    CHECK(json.find("\"seed\": 7") != std::string::npos);
}

TEST_SUITE_END();
