#pragma once

#include <Eigen/Core>

#include "agfd/errors.hpp"
#include "agfd/wavelet.hpp"

namespace agfd {

// M x N panel of observed aggregated curves; each column is one sample
// observed on the shared grid t_m = m/M.
struct AggregatedPanel {
    Eigen::MatrixXd values;
    Eigen::VectorXd grid;
};

// L x N known mixing weights; every column lies on the open simplex.
struct WeightMatrix {
    Eigen::MatrixXd values;

    int component_count() const { return static_cast<int>(values.rows()); }
    int sample_count() const { return static_cast<int>(values.cols()); }
    // Throws InvalidInputError naming the offending entry/column when a
    // weight leaves (0,1) or a column sum strays from 1 beyond `tol`.
    void validate(double tol = 1e-12) const;
};

// M x L matrix of true or estimated component curves on the shared grid.
struct ComponentSet {
    Eigen::MatrixXd values;
    Eigen::VectorXd grid;
};

// Observation model: values = components * weights + noise.
AggregatedPanel aggregate_panel(const ComponentSet& components, const WeightMatrix& weights,
                                const Eigen::MatrixXd& noise);

// Least-squares projection of a denoised coefficient panel onto the weight
// rows: theta_hat = shrunk * y' * (y y')^{-1}, via a Cholesky solve of the
// SPD Gram matrix. Throws IllConditionedWeightsError when cond(y y')
// reaches 1e12.
Eigen::MatrixXd project_components(const Eigen::MatrixXd& shrunk_coeffs,
                                   const WeightMatrix& weights);

// Columnwise inverse transform of the projected coefficients.
ComponentSet reconstruct_components(const Eigen::MatrixXd& theta_hat, const TransformPlan& plan);

}  // namespace agfd
