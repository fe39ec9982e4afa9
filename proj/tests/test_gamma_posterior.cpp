#include <doctest.h>

#include <cmath>
#include <random>

#include "agfd/gamma_posterior.hpp"
#include "agfd/rng.hpp"
#include "support/matrix_dwt.hpp"

using namespace agfd;

namespace {

GammaModel make_model(int m, WaveletFilter filter, double a, double b, double p, double tau) {
    PriorConfig prior;
    prior.fixed_p = p;
    prior.logistic_scale = tau;
    GammaModel model{TransformPlan(m, 3, filter), GammaNoiseSpec{a, b}, prior};
    model.validate();
    return model;
}

// Direct evaluation of the posterior through the materialized transform
// matrix: residual_i = sum_k w_ki (d_k - theta_k), triple loop, no idwt.
double direct_log_likelihood(const Eigen::VectorXd& theta, const Eigen::VectorXd& d,
                             const GammaModel& model, const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(theta.size());
    const double a = model.gamma.shape;
    const double b = model.gamma.rate;
    double sum_r = 0.0, sum_log_r = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        for (int k = 0; k < n; ++k) r += w(k, i) * (d(k) - theta(k));
        if (r <= 0.0) return -std::numeric_limits<double>::infinity();
        sum_r += r;
        sum_log_r += std::log(r);
    }
    return n * (a * std::log(b) - std::lgamma(a)) - b * sum_r + (a - 1.0) * sum_log_r;
}

double direct_log_prior(const Eigen::VectorXd& theta, const GammaModel& model) {
    const double tau = model.prior.logistic_scale;
    const double f = model.spike_scale_fraction;
    const auto logistic = [](double x, double s) {
        const double e = std::exp(-std::abs(x) / s);
        return e / (s * (1.0 + e) * (1.0 + e));
    };
    double total = 0.0;
    for (int i = model.plan.scaling_length(); i < model.plan.length(); ++i) {
        const double p =
            model.prior.point_mass_weight(model.plan.level_of(i), model.plan.primary_level());
        total += std::log(p * logistic(theta(i), f * tau) + (1.0 - p) * logistic(theta(i), tau));
    }
    return total;
}

Eigen::VectorXd random_vector(int n, std::uint64_t seed, double sd = 1.0) {
    RngEngine engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, sd);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(engine);
    return v;
}

// A (theta, d) pair whose time-domain residual is strictly positive.
std::pair<Eigen::VectorXd, Eigen::VectorXd> feasible_pair(const GammaModel& model,
                                                          std::uint64_t seed) {
    const int m = model.plan.length();
    RngEngine engine = make_engine(seed);
    std::uniform_real_distribution<double> uniform(0.5, 2.0);
    Eigen::VectorXd residual(m);
    for (int i = 0; i < m; ++i) residual(i) = uniform(engine);
    const Eigen::VectorXd d = random_vector(m, seed + 1, 2.0);
    const Eigen::VectorXd theta = d - dwt(residual, model.plan);
    return {theta, d};
}

}  // namespace

TEST_SUITE_BEGIN("gamma-posterior");

TEST_CASE("negative residual support indicator") {
    const GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.0, 0.75, 5.0);
    const Eigen::VectorXd d = random_vector(32, 3);
    // theta = d makes the residual identically zero: outside the support.
    CHECK(log_likelihood(d, d, model) == -std::numeric_limits<double>::infinity());
    CHECK(log_posterior(d, d, model) == -std::numeric_limits<double>::infinity());
    // Push one residual coordinate negative.
    Eigen::VectorXd residual = Eigen::VectorXd::Ones(32);
    residual(7) = -0.25;
    const Eigen::VectorXd theta = d - dwt(residual, model.plan);
    CHECK(log_likelihood(theta, d, model) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("identity plan, unit residuals, exponential errors") {
    // W = I, a = b = 1: the density is exp(-r) per coordinate, so the
    // log-likelihood at unit residuals is -M.
    GammaModel model{TransformPlan(2, 0, WaveletFilter::identity), GammaNoiseSpec{1.0, 1.0},
                     PriorConfig{}};
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(2, 3.0);
    const Eigen::VectorXd theta = Eigen::VectorXd::Constant(2, 2.0);  // residual = 1
    CHECK(log_likelihood(theta, d, model) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("identity plan reduces to the iid gamma product") {
    GammaModel model{TransformPlan(8, 0, WaveletFilter::identity), GammaNoiseSpec{3.0, 2.0},
                     PriorConfig{}};
    RngEngine engine = make_engine(11);
    std::uniform_real_distribution<double> uniform(0.1, 4.0);
    Eigen::VectorXd residual(8);
    for (int i = 0; i < 8; ++i) residual(i) = uniform(engine);
    const Eigen::VectorXd d = random_vector(8, 12);
    const Eigen::VectorXd theta = d - residual;

    double expected = 0.0;
    for (int i = 0; i < 8; ++i)
        expected += 3.0 * std::log(2.0) - std::lgamma(3.0) + 2.0 * std::log(residual(i)) -
                    2.0 * residual(i);
    CHECK(log_likelihood(theta, d, model) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("likelihood matches the explicit-matrix evaluation") {
    const GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.5, 0.75, 5.0);
    const Eigen::MatrixXd w = build_transform_matrix(model.plan);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto [theta, d] = feasible_pair(model, seed);
        const double via_idwt = log_likelihood(theta, d, model);
        const double direct = direct_log_likelihood(theta, d, model, w);
        CHECK(via_idwt == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("posterior matches an independently coded evaluation") {
    const GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.5, 0.75, 5.0);
    // Second, fully independent construction of W.
    const Eigen::MatrixXd w = testing::explicit_transform_matrix(model.plan);
    for (std::uint64_t seed = 200; seed < 206; ++seed) {
        const auto [theta, d] = feasible_pair(model, seed);
        const double expected =
            direct_log_likelihood(theta, d, model, w) + direct_log_prior(theta, model);
        CHECK(log_posterior(theta, d, model) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(log_posterior(theta, d, model) ==
              doctest::Approx(log_prior(theta, model) + log_likelihood(theta, d, model))
                  .epsilon(1e-15));
    }
}

TEST_CASE("support correctness characterizes finiteness") {
    const GammaModel model = make_model(32, WaveletFilter::db2, 2.0, 1.0, 0.5, 5.0);
    RngEngine engine = make_engine(31);
    std::normal_distribution<double> normal(0.0, 1.0);
    int finite_seen = 0, infinite_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd theta(32), d(32);
        for (int i = 0; i < 32; ++i) {
            theta(i) = normal(engine);
            d(i) = normal(engine);
        }
        const bool inside = (idwt(d - theta, model.plan).array() > 0.0).all();
        const double value = log_posterior(theta, d, model);
        if (inside) {
            CHECK(std::isfinite(value));
            ++finite_seen;
        } else {
            CHECK(value == -std::numeric_limits<double>::infinity());
            ++infinite_seen;
        }
    }
    CHECK(infinite_seen > 0);  // random pairs are almost surely infeasible
}

TEST_CASE("prior at the origin matches the hand formula") {
    const double p = 0.75, tau = 5.0, f = 1e-4;
    const GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.0, p, tau);
    const double per_coordinate = std::log(p / (4.0 * tau * f) + (1.0 - p) / (4.0 * tau));
    const int detail_count = 32 - model.plan.scaling_length();
    CHECK(log_prior(Eigen::VectorXd::Zero(32), model) ==
          doctest::Approx(detail_count * per_coordinate).epsilon(1e-12));
}

TEST_CASE("prior is symmetric") {
    const GammaModel model = make_model(64, WaveletFilter::db8, 2.0, 1.0, 0.6, 4.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Eigen::VectorXd theta = random_vector(64, 400 + seed, 8.0);
        CHECK(log_prior(theta, model) == doctest::Approx(log_prior(-theta, model)).epsilon(1e-14));
    }
}

TEST_CASE("prior with p = 0 is the pure slab") {
    const GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.0, 0.0, 5.0);
    const Eigen::VectorXd theta = random_vector(32, 17, 3.0);
    double expected = 0.0;
    for (int i = model.plan.scaling_length(); i < 32; ++i)
        expected += log_logistic_density(theta(i), 5.0);
    CHECK(log_prior(theta, model) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("spike fraction sensitivity keeps the geometry") {
    // The spike surrogate scale moves the prior mass near zero but must
    // not change feasibility or ordering of clearly separated points.
    const Eigen::VectorXd d = random_vector(32, 23, 2.0);
    for (const double fraction : {1e-3, 1e-5}) {
        GammaModel model = make_model(32, WaveletFilter::db4, 2.0, 1.0, 0.75, 5.0);
        model.spike_scale_fraction = fraction;
        const Eigen::VectorXd theta = feasible_init(d, model);
        CHECK(std::isfinite(log_posterior(theta, d, model)));
        // Near-zero detail coefficients are preferred a priori.
        Eigen::VectorXd small = Eigen::VectorXd::Zero(32);
        Eigen::VectorXd large = Eigen::VectorXd::Zero(32);
        large.tail(16).setConstant(25.0);
        CHECK(log_prior(small, model) > log_prior(large, model));
    }
}

TEST_CASE("feasible_init") {
    const GammaModel model = make_model(32, WaveletFilter::db8, 2.0, 0.5, 0.75, 5.0);
    const Eigen::VectorXd d = random_vector(32, 47, 3.0);

    SUBCASE("margin 1 gives unit residuals") {
        const Eigen::VectorXd theta = feasible_init(d, model, 1.0);
        const Eigen::VectorXd residual = idwt(d - theta, model.plan);
        CHECK((residual.array() - 1.0).abs().maxCoeff() < 1e-12);
    }
    SUBCASE("default margin is the noise mean and stays feasible") {
        const Eigen::VectorXd theta = feasible_init(d, model);
        const Eigen::VectorXd residual = idwt(d - theta, model.plan);
        CHECK((residual.array() - 4.0).abs().maxCoeff() < 1e-12);  // a/b = 4
        CHECK(std::isfinite(log_posterior(theta, d, model)));
    }
    SUBCASE("haar linearity example") {
        GammaModel haar{TransformPlan(4, 0, WaveletFilter::haar), GammaNoiseSpec{2.0, 1.0},
                        PriorConfig{}};
        const Eigen::VectorXd observed = dwt(Eigen::VectorXd::Constant(4, 5.0), haar.plan);
        const Eigen::VectorXd expected = dwt(Eigen::VectorXd::Constant(4, 3.0), haar.plan);
        CHECK((feasible_init(observed, haar, 2.0) - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("margin must be positive") {
        CHECK_THROWS_AS(feasible_init(d, model, 0.0), InvalidInputError);
    }
}

TEST_SUITE_END();
