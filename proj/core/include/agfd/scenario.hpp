#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agfd/noise.hpp"
#include "agfd/ram.hpp"
#include "agfd/shrinkage.hpp"
#include "agfd/test_signals.hpp"
#include "agfd/wavelet.hpp"

namespace agfd {

enum class Estimator { identity, gamma_bayes, correlated_bayes, universal_threshold };

Estimator parse_estimator(const std::string& name);
std::string estimator_name(Estimator estimator);

enum class WeightRule { dirichlet };

// Declarative description of one simulation study.
struct ScenarioSpec {
    std::vector<TestSignal> components;
    int grid_length = 512;       // M, power of two
    int sample_count = 100;      // N
    double snr = 7.0;
    NoiseFamily noise_family = NoiseFamily::gaussian;
    NoiseFixedParams noise_params;
    std::optional<double> noise_sd_override;  // bypasses the SNR convention when set

    Estimator estimator = Estimator::correlated_bayes;
    PriorConfig prior;
    WaveletFilter filter = WaveletFilter::db8;
    int primary_level = 3;

    RamConfig sampler;  // used by the gamma-bayes estimator
    int replications = 25;
    std::uint64_t master_seed = 1;
    WeightRule weight_rule = WeightRule::dirichlet;

    // Amplitude every component is rescaled to before aggregation.
    double component_sd = 7.0;

    void validate() const;
    int component_count() const { return static_cast<int>(components.size()); }
};

// Scenario files are flat key-value documents with [section] headers
// mirroring the field groups (top level, [noise], [prior], [wavelet],
// [sampler]); '#' starts a comment. Unknown keys or sections are hard
// errors.
ScenarioSpec parse_scenario_text(const std::string& text);
ScenarioSpec load_scenario_file(const std::filesystem::path& path);

// Stable canonical rendering of a spec (key order fixed, numbers at full
// precision). Equal specs produce identical text.
std::string canonical_scenario_text(const ScenarioSpec& spec);

// FNV-1a 64-bit digest of the canonical text, as 16 hex characters.
std::string scenario_digest(const ScenarioSpec& spec);

// True when the two specs differ at most in their estimator tag.
bool equal_ignoring_estimator(const ScenarioSpec& a, const ScenarioSpec& b);

}  // namespace agfd
