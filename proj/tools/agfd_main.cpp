// agfd command line front end: scenario simulation, real-data calibration
// and test-signal export. Exit codes: 0 success, 2 validation error,
// 3 runtime/numerical error, 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "agfd/csv.hpp"
#include "agfd/harness.hpp"
#include "agfd/log.hpp"
#include "agfd/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

void write_manifest(const fs::path& path, const std::string& digest, std::uint64_t seed,
                    const std::string& started, const std::vector<std::string>& outputs) {
    json manifest;
    manifest["tool"] = "agfd";
    manifest["version"] = agfd::kVersion;
    manifest["scenario_digest"] = digest;
    manifest["master_seed"] = seed;
    manifest["started"] = started;
    manifest["finished"] = iso_timestamp();
    manifest["outputs"] = outputs;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw agfd::IoError("cannot write manifest '" + path.string() + "'");
    out << manifest.dump(2) << "\n";
}

struct GlobalFlags {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;  // 0: hardware default
    bool paper_scale = false;
    bool quiet = false;
};

void ensure_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw agfd::IoError("cannot create output directory '" + dir.string() + "'");
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const fs::path& scenario_path, const fs::path& out_dir,
                 const GlobalFlags& flags) {
    agfd::ScenarioSpec spec = agfd::load_scenario_file(scenario_path);
    if (flags.seed_set) spec.master_seed = flags.seed;
    if (flags.paper_scale) {
        spec.sampler.iterations = 50000;
        spec.replications = 400;
    }
    spec.validate();

    const std::string started = iso_timestamp();
    ensure_output_dir(out_dir);
    const agfd::ScenarioSummary summary = agfd::run_scenario(spec, flags.threads);

    const fs::path summary_path = out_dir / "summary.csv";
    const fs::path reps_path = out_dir / "replications.csv";
    agfd::write_summary_csv(summary_path, summary);
    agfd::write_replications_csv(reps_path, summary);
    write_manifest(out_dir / "manifest.json", summary.digest, spec.master_seed, started,
                   {summary_path.filename().string(), reps_path.filename().string()});

    if (!flags.quiet) {
        std::cout << "scenario " << summary.digest << ": aggregated AMSE "
                  << agfd::format_double(summary.aggregated_amse) << " (sd "
                  << agfd::format_double(summary.aggregated_sd) << "), " << summary.replications
                  << " replications, " << summary.failures << " failures\n";
    }
    return summary.failures == summary.replications ? kExitRuntime : kExitOk;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

struct CalibrateOptions {
    std::string estimator = "correlated-bayes";
    std::string filter = "db8";
    int primary_level = 3;
    double tau = 5.0;
    std::optional<double> fixed_p;
    std::optional<double> level_h;
    std::optional<double> gamma_shape;
    std::optional<double> gamma_rate;
    long chain_length = 5000;
    double burn_in = 0.2;
    long thinning = 10;
};

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int cmd_calibrate(const fs::path& panel_path, const fs::path& weights_path,
                  const fs::path& out_dir, const CalibrateOptions& options,
                  const GlobalFlags& flags) {
    const agfd::CsvTable panel_table = agfd::read_matrix_csv(panel_path);
    if (panel_table.header.empty() || panel_table.header.front() != "t")
        throw agfd::InvalidInputError(
            "panel CSV must be grid-major with a leading 't' column (header 't,s1,...')");
    const Eigen::Index m = panel_table.values.rows();
    if (!is_power_of_two(m))
        throw agfd::InvalidInputError(
            "panel has " + std::to_string(m) +
            " grid rows; the transform needs a power of two. Truncate or pad the data "
            "explicitly; no silent padding is performed");
    const Eigen::MatrixXd panel =
        panel_table.values.rightCols(panel_table.values.cols() - 1);

    agfd::WeightMatrix weights;
    weights.values = agfd::read_matrix_csv(weights_path).values;
    weights.validate(1e-6);
    if (weights.values.cols() != panel.cols())
        throw agfd::InvalidInputError("weights have " + std::to_string(weights.values.cols()) +
                                      " sample columns but the panel has " +
                                      std::to_string(panel.cols()));

    agfd::EstimationSettings settings;
    settings.estimator = agfd::parse_estimator(options.estimator);
    settings.prior.logistic_scale = options.tau;
    if (options.fixed_p && options.level_h)
        throw agfd::InvalidInputError("--p and --level-exponent are mutually exclusive");
    if (options.fixed_p) settings.prior.fixed_p = *options.fixed_p;
    if (options.level_h) settings.prior.level_exponent = *options.level_h;
    settings.sampler.iterations = options.chain_length;
    settings.sampler.burn_in_fraction = options.burn_in;
    settings.sampler.thinning_stride = options.thinning;
    settings.prior.validate();

    const agfd::TransformPlan plan(static_cast<int>(m), options.primary_level,
                                   agfd::parse_wavelet_filter(options.filter));
    const Eigen::MatrixXd coeffs = agfd::dwt_panel(panel, plan);

    if (settings.estimator == agfd::Estimator::gamma_bayes) {
        if (options.gamma_shape) settings.gamma.shape = *options.gamma_shape;
        if (options.gamma_rate) {
            settings.gamma.rate = *options.gamma_rate;
        } else {
            // Pilot pass: identity estimate, then moment-match the strictly
            // positive residuals.
            const Eigen::MatrixXd pilot_theta = agfd::project_components(coeffs, weights);
            const Eigen::MatrixXd residual =
                panel - agfd::idwt_panel(pilot_theta, plan) * weights.values;
            const Eigen::ArrayXXd positive = residual.array().max(1e-12);
            const agfd::GammaNoiseSpec estimated =
                agfd::estimate_gamma_from_residuals(positive.matrix());
            if (!options.gamma_shape) settings.gamma.shape = estimated.shape;
            settings.gamma.rate = estimated.rate;
            agfd::warn("calibrate: gamma parameters not supplied; moment-matched (a = " +
                       std::to_string(settings.gamma.shape) + ", b = " +
                       std::to_string(settings.gamma.rate) + ") from pilot residuals");
        }
        settings.gamma.validate();
    }

    const std::string started = iso_timestamp();
    ensure_output_dir(out_dir);

    const Eigen::MatrixXd shrunk =
        agfd::apply_estimator(coeffs, settings, plan, flags.seed_set ? flags.seed : 1);
    const Eigen::MatrixXd theta_hat = agfd::project_components(shrunk, weights);
    const agfd::ComponentSet components = agfd::reconstruct_components(theta_hat, plan);

    Eigen::MatrixXd with_grid(m, components.values.cols() + 1);
    with_grid.col(0) = components.grid;
    with_grid.rightCols(components.values.cols()) = components.values;
    std::vector<std::string> header{"t"};
    for (Eigen::Index l = 0; l < components.values.cols(); ++l)
        header.push_back("component_" + std::to_string(l + 1));

    const fs::path components_path = out_dir / "components.csv";
    agfd::write_matrix_csv(components_path, header, with_grid);
    write_manifest(out_dir / "manifest.json", "calibrate", flags.seed_set ? flags.seed : 1,
                   started, {components_path.filename().string()});

    if (!flags.quiet)
        std::cout << "calibrated " << components.values.cols() << " components from "
                  << panel.cols() << " samples -> " << components_path.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// signal
// ---------------------------------------------------------------------------

int cmd_signal(const std::string& name, int length, std::optional<double> target_sd,
               const fs::path& out_path, const GlobalFlags& flags) {
    agfd::TestSignalSpec spec{agfd::parse_signal_name(name), length, target_sd};
    const Eigen::VectorXd values = agfd::dj_function(spec);

    Eigen::MatrixXd table(length, 2);
    table.col(0) = agfd::sample_grid(length);
    table.col(1) = values;
    agfd::write_matrix_csv(out_path, {"t", name}, table);
    if (!flags.quiet)
        std::cout << "wrote " << length << " samples of " << name << " to " << out_path.string()
                  << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet calibration of aggregated functional data"};
    app.set_version_flag("--version", agfd::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the master seed");
    app.add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
    app.add_flag("--paper-scale", flags.paper_scale,
                 "Lift desk-scale caps (50000-iteration chains, 400 replications)");
    app.add_flag("--quiet", flags.quiet, "Suppress progress output and warnings");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a scenario file");
    std::string scenario_file, out_dir = "out";
    simulate->add_option("--scenario", scenario_file, "Scenario file")->required();
    simulate->add_option("--out", out_dir, "Output directory");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Estimate components from a panel");
    std::string panel_file, weights_file, calibrate_out = "out";
    CalibrateOptions copt;
    double p_value = 0.0, h_value = 0.0, shape_value = 0.0, rate_value = 0.0;
    calibrate->add_option("--panel", panel_file, "Aggregated panel CSV (t,s1,...)")->required();
    calibrate->add_option("--weights", weights_file, "Weight matrix CSV (L rows, N columns)")
        ->required();
    calibrate->add_option("--out", calibrate_out, "Output directory");
    calibrate->add_option("--estimator", copt.estimator,
                          "identity | gamma-bayes | correlated-bayes | universal-threshold");
    calibrate->add_option("--filter", copt.filter, "haar | db2 | db4 | db8");
    calibrate->add_option("--j0", copt.primary_level, "Primary resolution level");
    calibrate->add_option("--tau", copt.tau, "Slab logistic scale");
    auto* p_opt = calibrate->add_option("--p", p_value, "Fixed point-mass weight");
    auto* h_opt = calibrate->add_option("--level-exponent", h_value, "Level-rule exponent h");
    auto* shape_opt = calibrate->add_option("--gamma-shape", shape_value, "Gamma shape a");
    auto* rate_opt = calibrate->add_option("--gamma-rate", rate_value, "Gamma rate b");
    calibrate->add_option("--chain-length", copt.chain_length, "Sampler iterations");
    calibrate->add_option("--burn-in", copt.burn_in, "Burn-in fraction");
    calibrate->add_option("--thinning", copt.thinning, "Thinning stride");

    // signal
    auto* signal = app.add_subcommand("signal", "Export a test signal as CSV");
    std::string signal_name_arg;
    int signal_length = 2048;
    double signal_sd = 0.0;
    std::string signal_out = "signal.csv";
    signal->add_option("--name", signal_name_arg, "bumps | blocks | doppler | heavisine")
        ->required();
    signal->add_option("--length", signal_length, "Grid length (power of two)");
    auto* sd_opt = signal->add_option("--target-sd", signal_sd, "Rescale to this sd");
    signal->add_option("--out", signal_out, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    agfd::set_quiet(flags.quiet);
    flags.seed_set = seed_opt->count() > 0;
    flags.seed = seed_value;

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_file, out_dir, flags);
        if (calibrate->parsed()) {
            if (p_opt->count()) copt.fixed_p = p_value;
            if (h_opt->count()) copt.level_h = h_value;
            if (shape_opt->count()) copt.gamma_shape = shape_value;
            if (rate_opt->count()) copt.gamma_rate = rate_value;
            return cmd_calibrate(panel_file, weights_file, calibrate_out, copt, flags);
        }
        if (signal->parsed()) {
            std::optional<double> target_sd;
            if (sd_opt->count()) target_sd = signal_sd;
            return cmd_signal(signal_name_arg, signal_length, target_sd, signal_out, flags);
        }
    } catch (const agfd::ParseError& e) {
        std::cerr << "agfd: " << e.what() << "\n";
        return kExitValidation;
    } catch (const agfd::InvalidInputError& e) {
        std::cerr << "agfd: " << e.what() << "\n";
        return kExitValidation;
    } catch (const agfd::IoError& e) {
        std::cerr << "agfd: " << e.what() << "\n";
        return kExitIo;
    } catch (const agfd::Error& e) {
        std::cerr << "agfd: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "agfd: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}
