#include <doctest.h>

#include <random>

#include "agfd/rng.hpp"
#include "agfd/stats.hpp"
#include "agfd/test_signals.hpp"

using namespace agfd;

TEST_SUITE_BEGIN("signals");

TEST_CASE("heavisine closed form at t = 1/2") {
    // 4 sin(2 pi) - sgn(0.2) - sgn(0.22) = -2, pre-normalization.
    const Eigen::VectorXd f = dj_function(TestSignal::heavisine, 512);
    CHECK(f(255) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("bumps is a nonnegative kernel sum") {
    const Eigen::VectorXd f = dj_function(TestSignal::bumps, 2048);
    CHECK(f.minCoeff() >= 0.0);
    CHECK(f.maxCoeff() > 0.0);
}

TEST_CASE("blocks is piecewise constant with 11 change points") {
    const Eigen::VectorXd f = dj_function(TestSignal::blocks, 2048);
    int jumps = 0;
    for (int i = 1; i < f.size(); ++i)
        if (f(i) != f(i - 1)) ++jumps;
    CHECK(jumps <= 11);
    CHECK(jumps >= 10);  // every knot interior to (0,1] shows up on this grid
}

TEST_CASE("signals are deterministic") {
    for (const auto s :
         {TestSignal::bumps, TestSignal::blocks, TestSignal::doppler, TestSignal::heavisine}) {
        const Eigen::VectorXd a = dj_function(s, 256);
        const Eigen::VectorXd b = dj_function(s, 256);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("grid refinement consistency") {
    for (const auto s : {TestSignal::blocks, TestSignal::heavisine}) {
        const Eigen::VectorXd coarse = dj_function(s, 512);
        const Eigen::VectorXd fine = dj_function(s, 2048);
        for (int i = 0; i < 512; ++i) CHECK(coarse(i) == fine(4 * i + 3));
    }
}

TEST_CASE("spec with target sd rescales") {
    const TestSignalSpec spec{TestSignal::doppler, 512, 7.0};
    CHECK(sample_sd(dj_function(spec)) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("rescale_to_sd") {
    RngEngine engine = make_engine(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(128);
    for (int i = 0; i < 128; ++i) x(i) = normal(engine);

    SUBCASE("already at the target returns the same values") {
        const Eigen::VectorXd y = rescale_to_sd(x, sample_sd(x));
        CHECK((y - x).cwiseAbs().maxCoeff() < 1e-15 * x.cwiseAbs().maxCoeff());
    }
    SUBCASE("doubling the sd doubles every value") {
        const Eigen::VectorXd y = rescale_to_sd(x, 2.0 * sample_sd(x));
        CHECK((y - 2.0 * x).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("hits an arbitrary target") {
        CHECK(sample_sd(rescale_to_sd(x, 7.0)) == doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("constant input is rejected") {
        CHECK_THROWS_AS(rescale_to_sd(Eigen::VectorXd::Ones(16), 1.0), InvalidInputError);
    }
}

TEST_CASE("names round-trip and bad names are rejected") {
    for (const auto s :
         {TestSignal::bumps, TestSignal::blocks, TestSignal::doppler, TestSignal::heavisine})
        CHECK(parse_signal_name(signal_name(s)) == s);
    CHECK_THROWS_AS(parse_signal_name("spikes"), InvalidInputError);
}

TEST_CASE("grid convention is t_m = m/M") {
    const Eigen::VectorXd grid = sample_grid(8);
    CHECK(grid(0) == doctest::Approx(0.125).epsilon(1e-16));
    CHECK(grid(7) == 1.0);
}

TEST_SUITE_END();
