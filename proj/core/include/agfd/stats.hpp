#pragma once

#include <Eigen/Core>

#include "agfd/errors.hpp"

namespace agfd {

inline double mean(const Eigen::VectorXd& x) {
    if (x.size() == 0) throw InvalidInputError("mean: empty vector");
    return x.mean();
}

// Sample standard deviation (n-1 denominator), the convention used for
// SNR calibration and signal rescaling throughout.
inline double sample_sd(const Eigen::VectorXd& x) {
    if (x.size() < 2) throw InvalidInputError("sample_sd: need at least two values");
    const double m = x.mean();
    const double ss = (x.array() - m).square().sum();
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// Median of a copy of the values; even-length inputs average the two
// central order statistics.
double median(Eigen::VectorXd values);

// Mean squared pointwise difference between two equally long vectors.
inline double mse(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
    if (estimate.size() != truth.size())
        throw InvalidInputError("mse: length mismatch (" + std::to_string(estimate.size()) +
                                " vs " + std::to_string(truth.size()) + ")");
    if (estimate.size() == 0) throw InvalidInputError("mse: empty vectors");
    return (estimate - truth).squaredNorm() / static_cast<double>(estimate.size());
}

}  // namespace agfd
