#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include "agfd/model.hpp"
#include "agfd/scenario.hpp"

namespace agfd {

struct ReplicationResult {
    Eigen::VectorXd component_mse;  // one entry per component
    double aggregated_mse = 0.0;
    double wall_time_s = 0.0;
    double mean_acceptance = std::numeric_limits<double>::quiet_NaN();  // gamma-bayes only
    bool failed = false;
    std::string failure_reason;
};

struct ScenarioSummary {
    ScenarioSpec spec;
    std::string digest;
    std::vector<std::string> component_names;
    Eigen::VectorXd component_amse;  // mean MSE over successful replications
    Eigen::VectorXd component_sd;    // sample sd of the MSE over replications
    double aggregated_amse = 0.0;
    double aggregated_sd = 0.0;
    int replications = 0;
    int failures = 0;
    std::vector<ReplicationResult> replication_results;
};

// Per-replication data shared by every estimator under paired seeds.
struct ReplicationData {
    WeightMatrix weights;
    ComponentSet components;          // true curves, rescaled to spec.component_sd
    Eigen::VectorXd mean_aggregated;  // components * columnwise-mean weights
    AggregatedPanel panel;
    NoiseSpec noise;                  // calibrated spec actually used
};

// Deterministically regenerates replication r of a scenario; independent
// of the estimator tag, so paired comparisons reuse identical panels.
ReplicationData make_replication_data(const ScenarioSpec& spec, int replication);

// Everything a pipeline needs besides the data; the harness derives this
// from a ScenarioSpec, the CLI builds it from flags.
struct EstimationSettings {
    Estimator estimator = Estimator::correlated_bayes;
    PriorConfig prior;
    RamConfig sampler;               // gamma-bayes chains
    GammaNoiseSpec gamma{2.0, 1.0};  // gamma-bayes error model (a, b)
};

// Runs the selected estimation pipeline on one coefficient panel and
// returns the denoised panel delta(D). For gamma-bayes, `seed` derives the
// per-column chain seeds and `mean_acceptance_out` (optional) receives the
// average acceptance rate across columns.
Eigen::MatrixXd apply_estimator(const Eigen::MatrixXd& coeff_panel,
                                const EstimationSettings& settings, const TransformPlan& plan,
                                std::uint64_t seed, double* mean_acceptance_out = nullptr);

// Executes all replications (in parallel over `threads` workers; results
// are ordered by replication index and independent of scheduling) and
// aggregates AMSE per component and for the mean aggregated curve.
ScenarioSummary run_scenario(const ScenarioSpec& spec, int threads = 1);

struct MethodComparison {
    ScenarioSummary first;
    ScenarioSummary second;
    // Per-replication aggregated-curve MSE differences (first - second),
    // skipping replications where either side failed.
    std::vector<double> paired_differences;
    double mean_difference = 0.0;
};

// Runs both scenarios on identical generated panels (the specs must agree
// on everything but the estimator tag) and pairs the results.
MethodComparison compare_methods(const ScenarioSpec& first, const ScenarioSpec& second,
                                 int threads = 1);

// summary.csv columns: scenario, component, amse, sd, replications, failures.
void write_summary_csv(const std::filesystem::path& path, const ScenarioSummary& summary);
// replications.csv columns: replication, component, mse, wall_time_s,
// mean_acceptance, failed.
void write_replications_csv(const std::filesystem::path& path, const ScenarioSummary& summary);

}  // namespace agfd
