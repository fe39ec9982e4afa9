#include "agfd/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "agfd/log.hpp"

namespace agfd {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454836;
}

void PriorConfig::validate() const {
    if (fixed_p) {
        // p = 0 degenerates to the pure slab, which log_prior supports.
        if (!(*fixed_p >= 0.0 && *fixed_p < 1.0))
            throw InvalidInputError("prior: fixed point-mass weight must lie in [0,1)");
    } else if (!(level_exponent > 0.0)) {
        throw InvalidInputError("prior: level exponent h must be positive");
    }
    if (!(logistic_scale > 0.0))
        throw InvalidInputError("prior: logistic scale tau must be positive");
    if (logistic_scale > 10.0)
        warn("prior: logistic scale tau = " + std::to_string(logistic_scale) +
             " is outside the advised range (0, 10]");
}

double PriorConfig::point_mass_weight(int level, int primary_level) const {
    if (fixed_p) return *fixed_p;
    return p_of_level(level, primary_level, level_exponent);
}

double logistic_density(double x, double tau) {
    return std::exp(log_logistic_density(x, tau));
}

double log_logistic_density(double x, double tau) {
    if (!(tau > 0.0)) throw InvalidInputError("logistic density: tau must be positive");
    // Evaluate through |x| so the density is even to the last bit.
    const double z = std::abs(x) / tau;
    return -z - std::log(tau) - 2.0 * std::log1p(std::exp(-z));
}

double p_of_level(int level, int primary_level, double level_exponent) {
    if (level < primary_level)
        throw InvalidInputError("p_of_level: level " + std::to_string(level) +
                                " below primary level " + std::to_string(primary_level));
    if (!(level_exponent > 0.0))
        throw InvalidInputError("p_of_level: exponent h must be positive");
    return 1.0 - std::pow(static_cast<double>(level - primary_level + 1), -level_exponent);
}

double shrink_coefficient(double d, double sigma, double p, double tau,
                          const GaussHermite& rule) {
    if (!std::isfinite(d)) throw InvalidInputError("shrink_coefficient: non-finite coefficient");
    if (!(sigma > 0.0)) throw InvalidInputError("shrink_coefficient: sigma must be positive");
    if (!(p >= 0.0 && p < 1.0))
        throw InvalidInputError("shrink_coefficient: point-mass weight must lie in [0,1)");
    if (!(tau > 0.0)) throw InvalidInputError("shrink_coefficient: tau must be positive");

    // Slab integrals against the normal weight,
    //   I1 = E[(sigma U + d) g(sigma U + d; tau)],  I0 = E[g(sigma U + d; tau)],
    // evaluated in log scale relative to their largest term so extreme
    // |d|/tau cannot underflow both sides of the ratio.
    const auto& nodes = rule.positive_nodes();
    const auto& weights = rule.pair_weights();
    const std::size_t pairs = nodes.size();

    std::vector<double> log_g(2 * pairs);
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pairs; ++i) {
        const double offset = sigma * nodes[i];
        log_g[2 * i] = log_logistic_density(d + offset, tau);
        log_g[2 * i + 1] = log_logistic_density(d - offset, tau);
        max_log = std::max({max_log, log_g[2 * i], log_g[2 * i + 1]});
    }

    double slab_mass = 0.0;   // sum w g / exp(max_log)
    double slab_first = 0.0;  // sum w x g / exp(max_log)
    for (std::size_t i = 0; i < pairs; ++i) {
        const double offset = sigma * nodes[i];
        const double gp = std::exp(log_g[2 * i] - max_log);
        const double gm = std::exp(log_g[2 * i + 1] - max_log);
        slab_mass += weights[i] * (gp + gm);
        slab_first += weights[i] * ((d + offset) * gp + (d - offset) * gm);
    }

    // Spike term (p / sigma) phi(d / sigma) on the same log scale.
    const double z = d / sigma;
    const double log_spike = -0.5 * z * z - std::log(sigma) - 0.5 * kLogTwoPi;
    const double spike = p > 0.0 ? p * std::exp(log_spike - max_log) : 0.0;

    const double denom = spike + (1.0 - p) * slab_mass;
    // spike == inf means the point mass dominates completely: output 0.
    if (std::isinf(spike)) return 0.0;
    return (1.0 - p) * slab_first / denom;
}

Eigen::MatrixXd shrink_panel_level_dependent(const Eigen::MatrixXd& coeff_panel,
                                             const TransformPlan& plan,
                                             const PriorConfig& prior) {
    if (coeff_panel.rows() != plan.length())
        throw InvalidInputError("shrink_panel: panel rows do not match plan length");
    prior.validate();

    const auto& rule = GaussHermite::default_rule();
    const int j0 = plan.primary_level();
    Eigen::MatrixXd out = coeff_panel;
    for (Eigen::Index c = 0; c < coeff_panel.cols(); ++c) {
        for (int j = j0; j < plan.levels(); ++j) {
            const double sigma_j = mad_sigma_level(coeff_panel.col(c), j, plan);
            if (sigma_j == 0.0) {
                warn("shrink_panel: level " + std::to_string(j) + " of column " +
                     std::to_string(c) + " has zero MAD scale; passing through");
                continue;
            }
            const double p = prior.point_mass_weight(j, j0);
            const int offset = plan.detail_offset(j);
            const int len = plan.detail_length(j);
            for (int k = 0; k < len; ++k)
                out(offset + k, c) = shrink_coefficient(coeff_panel(offset + k, c), sigma_j, p,
                                                        prior.logistic_scale, rule);
        }
    }
    return out;
}

Eigen::MatrixXd universal_soft_threshold(const Eigen::MatrixXd& coeff_panel,
                                         const TransformPlan& plan) {
    if (coeff_panel.rows() != plan.length())
        throw InvalidInputError("universal_soft_threshold: panel rows do not match plan length");

    const double scale = std::sqrt(2.0 * std::log(static_cast<double>(plan.length())));
    Eigen::MatrixXd out = coeff_panel;
    for (Eigen::Index c = 0; c < coeff_panel.cols(); ++c) {
        for (int j = plan.primary_level(); j < plan.levels(); ++j) {
            const double lambda = mad_sigma_level(coeff_panel.col(c), j, plan) * scale;
            const int offset = plan.detail_offset(j);
            const int len = plan.detail_length(j);
            for (int k = 0; k < len; ++k) {
                const double d = coeff_panel(offset + k, c);
                const double mag = std::abs(d) - lambda;
                out(offset + k, c) = mag > 0.0 ? (d > 0.0 ? mag : -mag) : 0.0;
            }
        }
    }
    return out;
}

}  // namespace agfd
