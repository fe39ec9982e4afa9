#include "agfd/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <random>
#include <sstream>

#include "agfd/csv.hpp"
#include "agfd/gamma_posterior.hpp"
#include "agfd/log.hpp"
#include "agfd/parallel.hpp"
#include "agfd/rng.hpp"
#include "agfd/stats.hpp"

namespace agfd {

namespace {

// Seed stream tags inside one replication.
constexpr std::uint64_t kWeightStream = 0;
constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kChainStreamBase = 1000;

WeightMatrix draw_dirichlet_weights(int components, int samples, std::uint64_t seed) {
    WeightMatrix weights;
    weights.values.resize(components, samples);
    RngEngine engine = make_engine(seed);
    std::exponential_distribution<double> expo(1.0);
    for (int c = 0; c < samples; ++c) {
        double sum = 0.0;
        for (int r = 0; r < components; ++r) {
            double e = expo(engine);
            while (!(e > 0.0)) e = expo(engine);
            weights.values(r, c) = e;
            sum += e;
        }
        weights.values.col(c) /= sum;
    }
    weights.validate();
    return weights;
}

ComponentSet true_components(const ScenarioSpec& spec) {
    ComponentSet set;
    set.grid = sample_grid(spec.grid_length);
    set.values.resize(spec.grid_length, spec.component_count());
    for (int l = 0; l < spec.component_count(); ++l)
        set.values.col(l) = rescale_to_sd(dj_function(spec.components[l], spec.grid_length),
                                          spec.component_sd);
    return set;
}

GammaNoiseSpec gamma_spec_for_model(const ScenarioSpec& spec, const NoiseSpec& noise) {
    if (const auto* gamma = std::get_if<GammaNoiseSpec>(&noise)) return *gamma;
    // Model misspecification path: moment-match a Gamma to the actual
    // marginal noise scale, keeping the configured shape.
    const double sd = std::visit([](const auto& s) { return s.marginal_sd(); }, noise);
    GammaNoiseSpec surrogate{spec.noise_params.gamma_shape,
                             std::sqrt(spec.noise_params.gamma_shape) / sd};
    surrogate.validate();
    return surrogate;
}

}  // namespace

ReplicationData make_replication_data(const ScenarioSpec& spec, int replication) {
    const std::uint64_t rep_seed =
        derive_seed(spec.master_seed, static_cast<std::uint64_t>(replication));

    ReplicationData data;
    data.components = true_components(spec);
    data.weights = draw_dirichlet_weights(spec.component_count(), spec.sample_count,
                                          derive_seed(rep_seed, kWeightStream));

    const Eigen::VectorXd mean_weights = data.weights.values.rowwise().mean();
    data.mean_aggregated = data.components.values * mean_weights;

    Eigen::MatrixXd noise_matrix =
        Eigen::MatrixXd::Zero(spec.grid_length, spec.sample_count);
    if (spec.noise_family != NoiseFamily::none) {
        data.noise = spec.noise_sd_override
                         ? noise_spec_for_sd(spec.noise_family, *spec.noise_sd_override,
                                             spec.noise_params)
                         : snr_calibrate(spec.noise_family, data.mean_aggregated, spec.snr,
                                         spec.noise_params);
        noise_matrix = generate_noise_panel(data.noise, spec.grid_length, spec.sample_count,
                                            derive_seed(rep_seed, kNoiseStream));
    } else {
        // Placeholder spec; never sampled.
        data.noise = Ar1NoiseSpec{0.0, 1.0};
    }
    data.panel = aggregate_panel(data.components, data.weights, noise_matrix);
    return data;
}

Eigen::MatrixXd apply_estimator(const Eigen::MatrixXd& coeff_panel,
                                const EstimationSettings& settings, const TransformPlan& plan,
                                std::uint64_t seed, double* mean_acceptance_out) {
    switch (settings.estimator) {
        case Estimator::identity:
            return coeff_panel;
        case Estimator::correlated_bayes:
            return shrink_panel_level_dependent(coeff_panel, plan, settings.prior);
        case Estimator::universal_threshold:
            return universal_soft_threshold(coeff_panel, plan);
        case Estimator::gamma_bayes: {
            GammaModel model{plan, settings.gamma, settings.prior};
            model.validate();
            Eigen::MatrixXd shrunk(coeff_panel.rows(), coeff_panel.cols());
            double acceptance_sum = 0.0;
            for (Eigen::Index c = 0; c < coeff_panel.cols(); ++c) {
                const Eigen::VectorXd observed = coeff_panel.col(c);
                RamConfig chain_config = settings.sampler;
                chain_config.seed =
                    derive_seed(seed, kChainStreamBase + static_cast<std::uint64_t>(c));
                const auto target = [&observed, &model](const Eigen::VectorXd& theta) {
                    return log_posterior(theta, observed, model);
                };
                const ChainResult chain =
                    run_chain(target, feasible_init(observed, model), chain_config);
                shrunk.col(c) = posterior_mean(chain.samples);
                acceptance_sum += chain.acceptance_rate;
            }
            if (mean_acceptance_out && coeff_panel.cols() > 0)
                *mean_acceptance_out = acceptance_sum / static_cast<double>(coeff_panel.cols());
            return shrunk;
        }
    }
    throw InvalidInputError("apply_estimator: unknown estimator");
}

ScenarioSummary run_scenario(const ScenarioSpec& spec, int threads) {
    spec.validate();
    if (spec.estimator == Estimator::gamma_bayes) {
        if (spec.noise_family == NoiseFamily::none)
            throw InvalidInputError("run_scenario: gamma-bayes requires a noise model");
        if (spec.noise_family != NoiseFamily::gamma)
            warn("run_scenario: gamma-bayes estimator under " +
                 noise_family_name(spec.noise_family) +
                 " noise; the error model is misspecified");
    }

    const TransformPlan plan(spec.grid_length, spec.primary_level, spec.filter);
    const int n_components = spec.component_count();

    ScenarioSummary summary;
    summary.spec = spec;
    summary.digest = scenario_digest(spec);
    for (const auto component : spec.components)
        summary.component_names.push_back(signal_name(component));
    summary.replications = spec.replications;
    summary.replication_results.resize(spec.replications);

    parallel_for(static_cast<std::size_t>(spec.replications), threads, [&](std::size_t r) {
        ReplicationResult& result = summary.replication_results[r];
        const auto start = std::chrono::steady_clock::now();
        try {
            const ReplicationData data = make_replication_data(spec, static_cast<int>(r));
            const std::uint64_t rep_seed =
                derive_seed(spec.master_seed, static_cast<std::uint64_t>(r));

            EstimationSettings settings;
            settings.estimator = spec.estimator;
            settings.prior = spec.prior;
            settings.sampler = spec.sampler;
            if (spec.estimator == Estimator::gamma_bayes)
                settings.gamma = gamma_spec_for_model(spec, data.noise);

            const Eigen::MatrixXd coeffs = dwt_panel(data.panel.values, plan);
            double acceptance = std::numeric_limits<double>::quiet_NaN();
            const Eigen::MatrixXd shrunk =
                apply_estimator(coeffs, settings, plan, rep_seed, &acceptance);
            const Eigen::MatrixXd theta_hat = project_components(shrunk, data.weights);
            const ComponentSet estimate = reconstruct_components(theta_hat, plan);

            result.component_mse.resize(n_components);
            for (int l = 0; l < n_components; ++l)
                result.component_mse(l) =
                    mse(estimate.values.col(l), data.components.values.col(l));
            const Eigen::VectorXd mean_weights = data.weights.values.rowwise().mean();
            result.aggregated_mse =
                mse(estimate.values * mean_weights, data.mean_aggregated);
            result.mean_acceptance = acceptance;
        } catch (const std::exception& err) {
            result.failed = true;
            result.failure_reason = err.what();
            result.component_mse = Eigen::VectorXd::Constant(
                n_components, std::numeric_limits<double>::quiet_NaN());
            result.aggregated_mse = std::numeric_limits<double>::quiet_NaN();
        }
        result.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    // Aggregate over successes; failures are disclosed, never dropped
    // silently.
    int successes = 0;
    summary.component_amse = Eigen::VectorXd::Zero(n_components);
    summary.component_sd = Eigen::VectorXd::Zero(n_components);
    Eigen::VectorXd component_sq = Eigen::VectorXd::Zero(n_components);
    double agg_sum = 0.0, agg_sq = 0.0;
    for (const auto& result : summary.replication_results) {
        if (result.failed) {
            ++summary.failures;
            if (!result.failure_reason.empty())
                warn("run_scenario: replication failed: " + result.failure_reason);
            continue;
        }
        ++successes;
        summary.component_amse += result.component_mse;
        component_sq += result.component_mse.cwiseProduct(result.component_mse);
        agg_sum += result.aggregated_mse;
        agg_sq += result.aggregated_mse * result.aggregated_mse;
    }
    if (successes > 0) {
        summary.component_amse /= successes;
        summary.aggregated_amse = agg_sum / successes;
        if (successes > 1) {
            const double scale = 1.0 / (successes - 1.0);
            summary.component_sd =
                ((component_sq - successes * summary.component_amse.cwiseProduct(
                                                 summary.component_amse)) *
                 scale).cwiseMax(0.0).cwiseSqrt();
            summary.aggregated_sd = std::sqrt(std::max(
                0.0, (agg_sq - successes * summary.aggregated_amse * summary.aggregated_amse) *
                         scale));
        }
    }
    return summary;
}

MethodComparison compare_methods(const ScenarioSpec& first, const ScenarioSpec& second,
                                 int threads) {
    if (!equal_ignoring_estimator(first, second))
        throw InvalidInputError(
            "compare_methods: scenarios differ beyond the estimator tag; paired "
            "comparison would not share data");

    MethodComparison comparison;
    comparison.first = run_scenario(first, threads);
    comparison.second = run_scenario(second, threads);
    for (int r = 0; r < first.replications; ++r) {
        const auto& a = comparison.first.replication_results[r];
        const auto& b = comparison.second.replication_results[r];
        if (a.failed || b.failed) continue;
        comparison.paired_differences.push_back(a.aggregated_mse - b.aggregated_mse);
    }
    if (!comparison.paired_differences.empty()) {
        double sum = 0.0;
        for (const double d : comparison.paired_differences) sum += d;
        comparison.mean_difference = sum / static_cast<double>(comparison.paired_differences.size());
    }
    return comparison;
}

namespace {

void append_row(std::ostringstream& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out << ',';
        out << f;
        first = false;
    }
    out << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                      "': " + ec.message());
    }
}

}  // namespace

void write_summary_csv(const std::filesystem::path& path, const ScenarioSummary& summary) {
    std::ostringstream out;
    out << "scenario,component,amse,sd,replications,failures\n";
    const std::string reps = std::to_string(summary.replications);
    const std::string failures = std::to_string(summary.failures);
    for (std::size_t l = 0; l < summary.component_names.size(); ++l)
        append_row(out, {summary.digest, summary.component_names[l],
                         format_double(summary.component_amse(static_cast<Eigen::Index>(l))),
                         format_double(summary.component_sd(static_cast<Eigen::Index>(l))), reps,
                         failures});
    append_row(out, {summary.digest, "aggregated", format_double(summary.aggregated_amse),
                     format_double(summary.aggregated_sd), reps, failures});
    write_text_file(path, out.str());
}

void write_replications_csv(const std::filesystem::path& path, const ScenarioSummary& summary) {
    std::ostringstream out;
    out << "replication,component,mse,wall_time_s,mean_acceptance,failed\n";
    for (std::size_t r = 0; r < summary.replication_results.size(); ++r) {
        const auto& result = summary.replication_results[r];
        const std::string rep = std::to_string(r);
        const std::string wall = format_double(result.wall_time_s);
        const std::string acc = format_double(result.mean_acceptance);
        const std::string failed = result.failed ? "1" : "0";
        for (std::size_t l = 0; l < summary.component_names.size(); ++l)
            append_row(out, {rep, summary.component_names[l],
                             format_double(result.component_mse(static_cast<Eigen::Index>(l))),
                             wall, acc, failed});
        append_row(out, {rep, "aggregated", format_double(result.aggregated_mse), wall, acc,
                         failed});
    }
    write_text_file(path, out.str());
}

}  // namespace agfd
