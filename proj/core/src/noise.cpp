#include "agfd/noise.hpp"

#include <cmath>
#include <random>
#include <type_traits>

#include "agfd/rng.hpp"
#include "agfd/stats.hpp"

namespace agfd {

void GammaNoiseSpec::validate() const {
    if (!(shape > 0.0)) throw InvalidInputError("gamma noise: shape must be positive");
    if (!(rate > 0.0)) throw InvalidInputError("gamma noise: rate must be positive");
}

void Ar1NoiseSpec::validate() const {
    if (!(std::abs(phi) < 1.0))
        throw InvalidInputError("ar1 noise: |phi| must be below 1 for stationarity");
    if (!(innovation_sd > 0.0))
        throw InvalidInputError("ar1 noise: innovation sd must be positive");
}

void ArfimaNoiseSpec::validate() const {
    if (!(d > 0.0 && d < 0.5))
        throw InvalidInputError("arfima noise: memory parameter d must lie in (0, 0.5)");
    if (!(innovation_sd > 0.0))
        throw InvalidInputError("arfima noise: innovation sd must be positive");
    if (truncation_q < 0) throw InvalidInputError("arfima noise: truncation order must be >= 0");
}

double ArfimaNoiseSpec::marginal_sd() const {
    const double log_var = std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d);
    return innovation_sd * std::exp(0.5 * log_var);
}

NoiseFamily parse_noise_family(const std::string& name) {
    if (name == "none") return NoiseFamily::none;
    if (name == "gaussian" || name == "normal") return NoiseFamily::gaussian;
    if (name == "gamma") return NoiseFamily::gamma;
    if (name == "ar1") return NoiseFamily::ar1;
    if (name == "arfima") return NoiseFamily::arfima;
    throw InvalidInputError("unknown noise family '" + name +
                            "' (expected none, gaussian, gamma, ar1 or arfima)");
}

std::string noise_family_name(NoiseFamily family) {
    switch (family) {
        case NoiseFamily::none: return "none";
        case NoiseFamily::gaussian: return "gaussian";
        case NoiseFamily::gamma: return "gamma";
        case NoiseFamily::ar1: return "ar1";
        case NoiseFamily::arfima: return "arfima";
    }
    return "?";
}

Eigen::VectorXd arfima_pi_coeffs(double d, int truncation_q) {
    if (!(d > 0.0 && d < 0.5))
        throw InvalidInputError("arfima_pi_coeffs: d must lie in (0, 0.5)");
    if (truncation_q < 0) throw InvalidInputError("arfima_pi_coeffs: Q must be >= 0");
    Eigen::VectorXd b(truncation_q + 1);
    b(0) = 1.0;
    for (int q = 1; q <= truncation_q; ++q) b(q) = b(q - 1) * (q - 1.0 - d) / q;
    return b;
}

Eigen::MatrixXd gen_gamma_panel(const GammaNoiseSpec& spec, int rows, int cols,
                                std::uint64_t seed) {
    spec.validate();
    Eigen::MatrixXd out(rows, cols);
    for (int c = 0; c < cols; ++c) {
        RngEngine engine = make_engine(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::gamma_distribution<double> gamma(spec.shape, 1.0 / spec.rate);
        for (int r = 0; r < rows; ++r) out(r, c) = gamma(engine);
    }
    return out;
}

Eigen::MatrixXd gen_ar1_panel(const Ar1NoiseSpec& spec, int rows, int cols, std::uint64_t seed) {
    spec.validate();
    Eigen::MatrixXd out(rows, cols);
    for (int c = 0; c < cols; ++c) {
        RngEngine engine = make_engine(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::normal_distribution<double> normal(0.0, 1.0);
        // Start from the stationary marginal so every path is stationary.
        double x = normal(engine) * spec.marginal_sd();
        out(0, c) = x;
        for (int r = 1; r < rows; ++r) {
            x = spec.phi * x + spec.innovation_sd * normal(engine);
            out(r, c) = x;
        }
    }
    return out;
}

Eigen::MatrixXd gen_arfima_panel(const ArfimaNoiseSpec& spec, int rows, int cols,
                                 std::uint64_t seed) {
    spec.validate();

    // Exact autocovariance gamma(k) = sigma^2 G(1-2d) G(k+d) /
    // (G(d) G(1-d) G(k+1-d)), computed by the ratio recurrence
    // gamma(k)/gamma(k-1) = (k-1+d)/(k-d).
    const double d = spec.d;
    Eigen::VectorXd acov(rows);
    acov(0) = spec.marginal_sd() * spec.marginal_sd();
    for (int k = 1; k < rows; ++k) acov(k) = acov(k - 1) * (k - 1.0 + d) / (k - d);

    Eigen::MatrixXd out(rows, cols);
    // Durbin-Levinson buffers, kept in reversed order: pr[i] = phi_{t, t-i},
    // so the one-step predictor is a contiguous dot with x[0..t-1].
    Eigen::VectorXd pr_prev(rows), pr_cur(rows);
    for (int c = 0; c < cols; ++c) {
        RngEngine engine = make_engine(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::normal_distribution<double> normal(0.0, 1.0);

        double v = acov(0);  // one-step prediction variance
        out(0, c) = std::sqrt(v) * normal(engine);
        for (int t = 1; t < rows; ++t) {
            double kappa = acov(t);
            if (t > 1) kappa -= pr_prev.head(t - 1).dot(acov.segment(1, t - 1));
            kappa /= v;

            pr_cur(0) = kappa;
            for (int i = 1; i < t; ++i)
                pr_cur(i) = pr_prev(i - 1) - kappa * pr_prev(t - 1 - i);
            pr_prev.head(t) = pr_cur.head(t);

            v *= (1.0 - kappa * kappa);
            const double mean = pr_prev.head(t).dot(out.col(c).head(t));
            out(t, c) = mean + std::sqrt(v) * normal(engine);
        }
    }
    return out;
}

Eigen::MatrixXd generate_noise_panel(const NoiseSpec& spec, int rows, int cols,
                                     std::uint64_t seed) {
    return std::visit(
        [&](const auto& s) -> Eigen::MatrixXd {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaNoiseSpec>)
                return gen_gamma_panel(s, rows, cols, seed);
            else if constexpr (std::is_same_v<T, Ar1NoiseSpec>)
                return gen_ar1_panel(s, rows, cols, seed);
            else
                return gen_arfima_panel(s, rows, cols, seed);
        },
        spec);
}

NoiseSpec noise_spec_for_sd(NoiseFamily family, double sigma_target,
                            const NoiseFixedParams& fixed) {
    if (!(sigma_target > 0.0))
        throw InvalidInputError("noise calibration: target sd must be positive");
    switch (family) {
        case NoiseFamily::gamma: {
            // Variance a/b^2 = sigma^2 with shape a held fixed.
            GammaNoiseSpec spec{fixed.gamma_shape, std::sqrt(fixed.gamma_shape) / sigma_target};
            spec.validate();
            return spec;
        }
        case NoiseFamily::gaussian: {
            Ar1NoiseSpec spec{0.0, sigma_target};
            spec.validate();
            return spec;
        }
        case NoiseFamily::ar1: {
            Ar1NoiseSpec spec{fixed.ar1_phi,
                              sigma_target * std::sqrt(1.0 - fixed.ar1_phi * fixed.ar1_phi)};
            spec.validate();
            return spec;
        }
        case NoiseFamily::arfima: {
            const double d = fixed.arfima_d;
            const double log_ratio = std::lgamma(1.0 - d) - 0.5 * std::lgamma(1.0 - 2.0 * d);
            ArfimaNoiseSpec spec{d, sigma_target * std::exp(log_ratio),
                                 fixed.arfima_truncation_q};
            spec.validate();
            return spec;
        }
        case NoiseFamily::none:
            throw InvalidInputError("noise calibration: family 'none' has no scale");
    }
    throw InvalidInputError("noise calibration: unknown family");
}

NoiseSpec snr_calibrate(NoiseFamily family, const Eigen::VectorXd& target_signal, double snr,
                        const NoiseFixedParams& fixed) {
    if (!(snr > 0.0)) throw InvalidInputError("snr_calibrate: snr must be positive");
    const double sd = sample_sd(target_signal);
    if (sd == 0.0)
        throw InvalidInputError("snr_calibrate: constant target signal, SNR undefined");
    return noise_spec_for_sd(family, sd / snr, fixed);
}

GammaNoiseSpec estimate_gamma_from_residuals(const Eigen::MatrixXd& residuals) {
    if (residuals.size() < 2)
        throw InvalidInputError("gamma moment estimate: need at least two residuals");
    if ((residuals.array() <= 0.0).any())
        throw InvalidInputError("gamma moment estimate: residuals must be strictly positive");
    const double m = residuals.mean();
    const double v = (residuals.array() - m).square().sum() /
                     static_cast<double>(residuals.size() - 1);
    if (!(v > 0.0)) throw InvalidInputError("gamma moment estimate: zero residual variance");
    GammaNoiseSpec spec{m * m / v, m / v};
    spec.validate();
    return spec;
}

}  // namespace agfd
