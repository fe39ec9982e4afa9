#include "agfd/model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include "agfd/test_signals.hpp"

namespace agfd {

void WeightMatrix::validate(double tol) const {
    const auto rows = values.rows();
    const auto cols = values.cols();
    if (rows < 1 || cols < 1) throw InvalidInputError("weights: empty matrix");
    if (cols < rows)
        throw InvalidInputError("weights: need at least as many samples as components (N >= L)");
    for (Eigen::Index c = 0; c < cols; ++c) {
        double sum = 0.0;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double w = values(r, c);
            if (!(w > 0.0 && w < 1.0)) {
                std::ostringstream msg;
                msg << "weights: entry (" << r + 1 << ", " << c + 1 << ") = " << w
                    << " is outside (0, 1)";
                throw InvalidInputError(msg.str());
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > tol) {
            std::ostringstream msg;
            msg << "weights: column " << c + 1 << " sums to " << sum
                << ", which is off the simplex by more than " << tol;
            throw InvalidInputError(msg.str());
        }
    }
}

AggregatedPanel aggregate_panel(const ComponentSet& components, const WeightMatrix& weights,
                                const Eigen::MatrixXd& noise) {
    const auto m = components.values.rows();
    const auto l = components.values.cols();
    if (weights.values.rows() != l)
        throw InvalidInputError("aggregate_panel: weight rows (" +
                                std::to_string(weights.values.rows()) +
                                ") do not match component count (" + std::to_string(l) + ")");
    if (noise.rows() != m || noise.cols() != weights.values.cols())
        throw InvalidInputError("aggregate_panel: noise dimensions do not match (M, N)");
    AggregatedPanel panel;
    panel.values = components.values * weights.values + noise;
    panel.grid = components.grid.size() == m ? components.grid : sample_grid(static_cast<int>(m));
    return panel;
}

Eigen::MatrixXd project_components(const Eigen::MatrixXd& shrunk_coeffs,
                                   const WeightMatrix& weights) {
    constexpr double kMaxCondition = 1e12;
    const Eigen::MatrixXd& y = weights.values;
    if (shrunk_coeffs.cols() != y.cols())
        throw InvalidInputError("project_components: panel columns (" +
                                std::to_string(shrunk_coeffs.cols()) +
                                ") do not match weight columns (" + std::to_string(y.cols()) +
                                ")");

    const Eigen::MatrixXd gram = y * y.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double min_ev = eig.eigenvalues().minCoeff();
    const double max_ev = eig.eigenvalues().maxCoeff();
    const double condition =
        min_ev > 0.0 ? max_ev / min_ev : std::numeric_limits<double>::infinity();
    if (!(condition < kMaxCondition)) {
        std::ostringstream msg;
        msg << "project_components: weight Gram matrix condition number " << condition
            << " exceeds " << kMaxCondition << "; weights are rank deficient or nearly so";
        throw IllConditionedWeightsError(msg.str(), condition);
    }

    // theta_hat' = (y y')^{-1} (y shrunk'); SPD Cholesky path.
    const Eigen::MatrixXd rhs = y * shrunk_coeffs.transpose();
    return gram.llt().solve(rhs).transpose();
}

ComponentSet reconstruct_components(const Eigen::MatrixXd& theta_hat, const TransformPlan& plan) {
    if (theta_hat.rows() != plan.length())
        throw InvalidInputError("reconstruct_components: rows do not match plan length");
    ComponentSet set;
    set.values = idwt_panel(theta_hat, plan);
    set.grid = sample_grid(plan.length());
    return set;
}

}  // namespace agfd
