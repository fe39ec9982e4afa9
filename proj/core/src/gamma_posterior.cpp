#include "agfd/gamma_posterior.hpp"

#include <cmath>
#include <limits>

namespace agfd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}
}  // namespace

void GammaModel::validate() const {
    gamma.validate();
    prior.validate();
    if (!(spike_scale_fraction > 0.0))
        throw InvalidInputError("gamma model: spike scale fraction must be positive");
}

double log_likelihood(const Eigen::VectorXd& theta, const Eigen::VectorXd& observed,
                      const GammaModel& model) {
    const int m = model.plan.length();
    if (theta.size() != m || observed.size() != m)
        throw InvalidInputError("log_likelihood: vector length does not match plan");
    if (!theta.allFinite() || !observed.allFinite())
        throw InvalidInputError("log_likelihood: non-finite input");

    const Eigen::VectorXd residual = idwt(observed - theta, model.plan);
    if ((residual.array() <= 0.0).any()) return kNegInf;

    const double a = model.gamma.shape;
    const double b = model.gamma.rate;
    double value = m * (a * std::log(b) - std::lgamma(a)) - b * residual.sum();
    if (a != 1.0) value += (a - 1.0) * residual.array().log().sum();
    return value;
}

double log_prior(const Eigen::VectorXd& theta, const GammaModel& model) {
    const int m = model.plan.length();
    if (theta.size() != m) throw InvalidInputError("log_prior: vector length does not match plan");
    if (!theta.allFinite()) throw InvalidInputError("log_prior: non-finite input");

    const double tau = model.prior.logistic_scale;
    const double spike_scale = model.spike_scale_fraction * tau;
    const int j0 = model.plan.primary_level();

    double value = 0.0;  // scaling block: flat prior contributes 0
    for (int i = model.plan.scaling_length(); i < m; ++i) {
        const double p = model.prior.point_mass_weight(model.plan.level_of(i), j0);
        const double slab = std::log1p(-p) + log_logistic_density(theta(i), tau);
        if (p <= 0.0) {
            value += slab;
        } else {
            const double spike = std::log(p) + log_logistic_density(theta(i), spike_scale);
            value += log_add_exp(spike, slab);
        }
    }
    return value;
}

double log_posterior(const Eigen::VectorXd& theta, const Eigen::VectorXd& observed,
                     const GammaModel& model) {
    const double lik = log_likelihood(theta, observed, model);
    if (lik == kNegInf) return kNegInf;
    return log_prior(theta, model) + lik;
}

Eigen::VectorXd feasible_init(const Eigen::VectorXd& observed, const GammaModel& model,
                              double margin) {
    if (!(margin > 0.0)) throw InvalidInputError("feasible_init: margin must be positive");
    if (observed.size() != model.plan.length())
        throw InvalidInputError("feasible_init: vector length does not match plan");
    const Eigen::VectorXd ones_image =
        dwt(Eigen::VectorXd::Constant(model.plan.length(), margin), model.plan);
    return observed - ones_image;
}

Eigen::VectorXd feasible_init(const Eigen::VectorXd& observed, const GammaModel& model) {
    return feasible_init(observed, model, model.gamma.noise_mean());
}

}  // namespace agfd
