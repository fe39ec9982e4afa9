#pragma once

#include <Eigen/Core>

#include "agfd/noise.hpp"
#include "agfd/shrinkage.hpp"
#include "agfd/wavelet.hpp"

namespace agfd {

// Joint posterior for a length-M coefficient vector under iid Gamma(a, b)
// time-domain errors with a spike-and-slab prior on detail coefficients.
//
// The point mass at zero is replaced by a narrow logistic with scale
// spike_scale_fraction * tau, which makes the posterior absolutely
// continuous so a random-walk sampler applies unchanged. Scaling
// coefficients get a flat prior.
struct GammaModel {
    TransformPlan plan;
    GammaNoiseSpec gamma;  // (a, b) are known model inputs
    PriorConfig prior;
    double spike_scale_fraction = 1e-4;

    void validate() const;
};

// Log-likelihood of theta given observed coefficients d. The time-domain
// residual r = idwt(d - theta) must be strictly positive coordinatewise;
// otherwise the result is -infinity.
double log_likelihood(const Eigen::VectorXd& theta, const Eigen::VectorXd& observed,
                      const GammaModel& model);

// Log of the spike-and-slab prior (spike surrogate as above); finite for
// every finite theta.
double log_prior(const Eigen::VectorXd& theta, const GammaModel& model);

// Unnormalized log-posterior: log_prior + log_likelihood; -infinity
// propagates from the likelihood support indicator.
double log_posterior(const Eigen::VectorXd& theta, const Eigen::VectorXd& observed,
                     const GammaModel& model);

// Support-interior starting point theta = d - dwt(margin * ones): the
// time-domain residual is exactly `margin` everywhere. Default margin is
// the noise mean a/b.
Eigen::VectorXd feasible_init(const Eigen::VectorXd& observed, const GammaModel& model,
                              double margin);
Eigen::VectorXd feasible_init(const Eigen::VectorXd& observed, const GammaModel& model);

}  // namespace agfd
