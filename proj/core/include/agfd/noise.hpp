#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <variant>

#include "agfd/errors.hpp"

namespace agfd {

// Strictly positive iid errors: Gamma(shape a, rate b), mean a/b,
// variance a/b^2.
struct GammaNoiseSpec {
    double shape;
    double rate;

    void validate() const;
    double noise_mean() const { return shape / rate; }
    double marginal_sd() const { return std::sqrt(shape) / rate; }
};

// Stationary AR(1) errors with Gaussian innovations; marginal variance
// sigma_eta^2 / (1 - phi^2). phi = 0 gives iid normal errors.
struct Ar1NoiseSpec {
    double phi;
    double innovation_sd;

    void validate() const;
    double marginal_sd() const { return innovation_sd / std::sqrt(1.0 - phi * phi); }
};

// Long-memory ARFIMA(0,d,0) errors, 0 < d < 0.5; marginal variance
// sigma_eta^2 Gamma(1-2d) / Gamma(1-d)^2.
struct ArfimaNoiseSpec {
    double d;
    double innovation_sd;
    int truncation_q = 50;  // order kept when expanding (1-B)^d into pi-weights

    void validate() const;
    double marginal_sd() const;
};

using NoiseSpec = std::variant<GammaNoiseSpec, Ar1NoiseSpec, ArfimaNoiseSpec>;

enum class NoiseFamily { none, gaussian, gamma, ar1, arfima };

NoiseFamily parse_noise_family(const std::string& name);
std::string noise_family_name(NoiseFamily family);

// pi-weights b_0..b_Q of the fractional difference (1-B)^d, computed by
// the recurrence b_0 = 1, b_q = b_{q-1} (q-1-d)/q.
Eigen::VectorXd arfima_pi_coeffs(double d, int truncation_q);

// Each generator fills an M x N matrix whose columns are independent
// sample paths (or iid draws), reproducibly for a fixed seed. Columns use
// seeds derived per column index, so parallel consumers see the same
// panel regardless of scheduling.
Eigen::MatrixXd gen_gamma_panel(const GammaNoiseSpec& spec, int rows, int cols,
                                std::uint64_t seed);
Eigen::MatrixXd gen_ar1_panel(const Ar1NoiseSpec& spec, int rows, int cols, std::uint64_t seed);
// Columns are exact stationary ARFIMA(0,d,0) paths generated by the
// Hosking recursion on the closed-form autocovariance.
Eigen::MatrixXd gen_arfima_panel(const ArfimaNoiseSpec& spec, int rows, int cols,
                                 std::uint64_t seed);
Eigen::MatrixXd generate_noise_panel(const NoiseSpec& spec, int rows, int cols,
                                     std::uint64_t seed);

// Parameters held fixed while SNR pins the remaining scale.
struct NoiseFixedParams {
    double gamma_shape = 2.0;
    double ar1_phi = 0.5;
    double arfima_d = 0.4;
    int arfima_truncation_q = 50;
};

// Builds a spec whose marginal standard deviation equals sigma_target.
NoiseSpec noise_spec_for_sd(NoiseFamily family, double sigma_target,
                            const NoiseFixedParams& fixed);

// SNR convention: sigma_target = sample_sd(target_signal) / snr. The
// signal must not be constant.
NoiseSpec snr_calibrate(NoiseFamily family, const Eigen::VectorXd& target_signal, double snr,
                        const NoiseFixedParams& fixed);

// Moment-matching (a, b) from strictly positive residuals: a = m^2/v,
// b = m/v. Utility for real-data calibration when the Gamma parameters
// are not known; not part of the estimation model itself.
GammaNoiseSpec estimate_gamma_from_residuals(const Eigen::MatrixXd& residuals);

}  // namespace agfd
