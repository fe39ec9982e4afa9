#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "agfd/errors.hpp"

namespace agfd {

// Donoho-Johnstone benchmark signals.
enum class TestSignal { bumps, blocks, doppler, heavisine };

TestSignal parse_signal_name(const std::string& name);
std::string signal_name(TestSignal signal);

struct TestSignalSpec {
    TestSignal name;
    int length;                          // M, a power of two
    std::optional<double> target_sd;     // rescale to this sd when set
};

// Evaluates the published closed form on the grid t_m = m/M, m = 1..M.
Eigen::VectorXd dj_function(TestSignal signal, int length);
Eigen::VectorXd dj_function(const TestSignalSpec& spec);

// Multiplies the signal by target_sd / sample_sd(signal).
Eigen::VectorXd rescale_to_sd(const Eigen::VectorXd& signal, double target_sd);

// Grid convention shared by all modules: t_m = m/M.
Eigen::VectorXd sample_grid(int length);

}  // namespace agfd
