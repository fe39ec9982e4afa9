#pragma once

#include <Eigen/Core>
#include <optional>

#include "agfd/quadrature.hpp"
#include "agfd/wavelet.hpp"

namespace agfd {

// Spike-and-slab prior configuration. The point-mass weight is either
// fixed or, when `fixed_p` is empty, follows the level rule
//   p(j) = 1 - 1/(j - J0 + 1)^h.
struct PriorConfig {
    std::optional<double> fixed_p;  // in (0,1) when set
    double level_exponent = 2.0;    // h > 0
    double logistic_scale = 5.0;    // tau, slab scale; 0 < tau <= 10 advised

    void validate() const;
    // Point-mass weight at detail level j for primary level j0.
    double point_mass_weight(int level, int primary_level) const;
};

// Centered logistic density with scale tau.
double logistic_density(double x, double tau);
double log_logistic_density(double x, double tau);

// Level rule p(j) = 1 - 1/(j - j0 + 1)^h; nondecreasing in j, 0 at j = j0.
double p_of_level(int level, int primary_level, double level_exponent);

// Posterior-mean shrinkage of a single empirical coefficient d with noise
// scale sigma, point-mass weight p and slab scale tau. Slab integrals are
// evaluated against the normal weight with the given Gauss-Hermite rule.
double shrink_coefficient(double d, double sigma, double p, double tau,
                          const GaussHermite& rule = GaussHermite::default_rule());

// Level-dependent shrinkage of a coefficient panel: per column, estimate
// sigma_j by MAD per detail level and shrink each detail coefficient with
// its level's (sigma_j, p(j)). Scaling coefficients pass through. Levels
// with sigma_j = 0 pass through with a logged warning.
Eigen::MatrixXd shrink_panel_level_dependent(const Eigen::MatrixXd& coeff_panel,
                                             const TransformPlan& plan,
                                             const PriorConfig& prior);

// Level-dependent universal soft threshold lambda_j = sigma_j sqrt(2 ln M);
// the comparison method for the Bayesian rule.
Eigen::MatrixXd universal_soft_threshold(const Eigen::MatrixXd& coeff_panel,
                                         const TransformPlan& plan);

}  // namespace agfd
