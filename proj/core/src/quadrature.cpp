#include "agfd/quadrature.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace agfd {

GaussHermite::GaussHermite(int node_count) {
    if (node_count < 2 || node_count % 2 != 0)
        throw InvalidInputError("GaussHermite: node count must be even and >= 2");

    // Jacobi matrix for physicists' Hermite polynomials: zero diagonal,
    // off-diagonal beta_k = sqrt(k/2). Eigenvalues are the nodes t_i of
    // integral f(t) exp(-t^2) dt; weights are sqrt(pi) * v_i(0)^2.
    const int n = node_count;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        throw Error("GaussHermite: eigendecomposition failed");

    const Eigen::VectorXd& t = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& v = solver.eigenvectors();

    // Change of variables u = sqrt(2) t maps to N(0,1) expectations with
    // weights w_i / sqrt(pi). Symmetrize the +/- halves so mirrored nodes
    // are bitwise negatives of each other.
    positive_nodes_.resize(n / 2);
    pair_weights_.resize(n / 2);
    for (int i = 0; i < n / 2; ++i) {
        const int hi = n - 1 - i;
        const double node = 0.5 * (t(hi) - t(i));  // positive half
        const double w0 = v(0, i) * v(0, i);
        const double w1 = v(0, hi) * v(0, hi);
        positive_nodes_[i] = std::sqrt(2.0) * node;
        pair_weights_[i] = 0.5 * (w0 + w1);  // already normalized: sum_i v(0,i)^2 = 1
    }
    std::reverse(positive_nodes_.begin(), positive_nodes_.end());
    std::reverse(pair_weights_.begin(), pair_weights_.end());
}

const GaussHermite& GaussHermite::default_rule() {
    static const GaussHermite rule(64);
    return rule;
}

}  // namespace agfd
