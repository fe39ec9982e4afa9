#pragma once

#include <vector>

#include "agfd/errors.hpp"

namespace agfd {

// Gauss-Hermite rule for expectations against the standard normal density:
//   E[f(U)] = integral f(u) phi(u) du  ~=  sum_i weight_i * f(node_i).
//
// Nodes/weights come from the Golub-Welsch eigendecomposition of the
// Hermite Jacobi matrix and are stored as exactly mirrored +/- pairs, so
// odd integrands cancel to the last bit. Node count must be even.
class GaussHermite {
public:
    explicit GaussHermite(int node_count);

    int node_count() const { return 2 * static_cast<int>(positive_nodes_.size()); }

    // Positive half-nodes in N(0,1) coordinates with their (paired) weights;
    // each entry represents nodes +u and -u, both with weight `weight`.
    const std::vector<double>& positive_nodes() const { return positive_nodes_; }
    const std::vector<double>& pair_weights() const { return pair_weights_; }

    // E[f(U)], U ~ N(0,1).
    template <class F>
    double normal_expectation(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < positive_nodes_.size(); ++i) {
            const double u = positive_nodes_[i];
            sum += pair_weights_[i] * (f(u) + f(-u));
        }
        return sum;
    }

    // Shared default rule (64 nodes).
    static const GaussHermite& default_rule();

private:
    std::vector<double> positive_nodes_;
    std::vector<double> pair_weights_;
};

}  // namespace agfd
