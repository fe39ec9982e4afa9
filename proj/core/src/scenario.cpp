#include "agfd/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "agfd/csv.hpp"

namespace agfd {

Estimator parse_estimator(const std::string& name) {
    if (name == "identity") return Estimator::identity;
    if (name == "gamma-bayes") return Estimator::gamma_bayes;
    if (name == "correlated-bayes") return Estimator::correlated_bayes;
    if (name == "universal-threshold") return Estimator::universal_threshold;
    throw InvalidInputError("unknown estimator '" + name +
                            "' (expected identity, gamma-bayes, correlated-bayes or "
                            "universal-threshold)");
}

std::string estimator_name(Estimator estimator) {
    switch (estimator) {
        case Estimator::identity: return "identity";
        case Estimator::gamma_bayes: return "gamma-bayes";
        case Estimator::correlated_bayes: return "correlated-bayes";
        case Estimator::universal_threshold: return "universal-threshold";
    }
    return "?";
}

void ScenarioSpec::validate() const {
    if (components.empty()) throw InvalidInputError("scenario: at least one component required");
    if (grid_length <= 0 || (grid_length & (grid_length - 1)) != 0)
        throw InvalidInputError("scenario: m must be a power of two");
    if (sample_count < component_count())
        throw InvalidInputError("scenario: n must be at least the number of components");
    if (noise_family != NoiseFamily::none && !noise_sd_override && !(snr > 0.0))
        throw InvalidInputError("scenario: snr must be positive");
    if (replications < 1) throw InvalidInputError("scenario: replications must be >= 1");
    if (!(component_sd > 0.0)) throw InvalidInputError("scenario: component sd must be positive");
    prior.validate();
    if (estimator == Estimator::gamma_bayes) sampler.validate();
    (void)TransformPlan(grid_length, primary_level, filter);  // validates M, J0
}

namespace {

struct RawDocument {
    // (section, key) -> value; section "" is the top level.
    std::vector<std::tuple<std::string, std::string, std::string>> entries;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

RawDocument tokenize(const std::string& text) {
    RawDocument doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("scenario line " + std::to_string(line_no) +
                                 ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("scenario line " + std::to_string(line_no) +
                             ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("scenario line " + std::to_string(line_no) +
                             ": empty key or value in '" + line + "'");
        doc.entries.emplace_back(section, key, value);
    }
    return doc;
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("scenario: field '" + key + "': '" + value + "' is not a number");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const long r = static_cast<long>(v);
    if (static_cast<double>(r) != v)
        throw ParseError("scenario: field '" + key + "': expected an integer, got '" + value +
                         "'");
    return r;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

}  // namespace

ScenarioSpec parse_scenario_text(const std::string& text) {
    ScenarioSpec spec;
    bool fixed_p_seen = false;
    bool h_seen = false;

    for (const auto& [section, key, value] : tokenize(text).entries) {
        if (section.empty()) {
            if (key == "components") {
                spec.components.clear();
                for (const auto& name : split_list(value))
                    spec.components.push_back(parse_signal_name(name));
            } else if (key == "m") {
                spec.grid_length = static_cast<int>(parse_integer(key, value));
            } else if (key == "n") {
                spec.sample_count = static_cast<int>(parse_integer(key, value));
            } else if (key == "snr") {
                spec.snr = parse_number(key, value);
            } else if (key == "estimator") {
                spec.estimator = parse_estimator(value);
            } else if (key == "replications") {
                spec.replications = static_cast<int>(parse_integer(key, value));
            } else if (key == "seed") {
                spec.master_seed = static_cast<std::uint64_t>(parse_integer(key, value));
            } else if (key == "weight_rule") {
                if (value != "dirichlet")
                    throw ParseError("scenario: unknown weight rule '" + value + "'");
                spec.weight_rule = WeightRule::dirichlet;
            } else if (key == "component_sd") {
                spec.component_sd = parse_number(key, value);
            } else {
                throw ParseError("scenario: unknown key '" + key + "'");
            }
        } else if (section == "noise") {
            if (key == "family") spec.noise_family = parse_noise_family(value);
            else if (key == "shape") spec.noise_params.gamma_shape = parse_number(key, value);
            else if (key == "phi") spec.noise_params.ar1_phi = parse_number(key, value);
            else if (key == "d") spec.noise_params.arfima_d = parse_number(key, value);
            else if (key == "truncation_q")
                spec.noise_params.arfima_truncation_q = static_cast<int>(parse_integer(key, value));
            else if (key == "sigma") spec.noise_sd_override = parse_number(key, value);
            else throw ParseError("scenario: unknown key 'noise." + key + "'");
        } else if (section == "prior") {
            if (key == "p") {
                spec.prior.fixed_p = parse_number(key, value);
                fixed_p_seen = true;
            } else if (key == "h") {
                spec.prior.level_exponent = parse_number(key, value);
                h_seen = true;
            } else if (key == "tau") {
                spec.prior.logistic_scale = parse_number(key, value);
            } else {
                throw ParseError("scenario: unknown key 'prior." + key + "'");
            }
        } else if (section == "wavelet") {
            if (key == "filter") spec.filter = parse_wavelet_filter(value);
            else if (key == "j0") spec.primary_level = static_cast<int>(parse_integer(key, value));
            else throw ParseError("scenario: unknown key 'wavelet." + key + "'");
        } else if (section == "sampler") {
            if (key == "iterations") spec.sampler.iterations = parse_integer(key, value);
            else if (key == "target_accept") spec.sampler.target_acceptance = parse_number(key, value);
            else if (key == "adaptation_decay") spec.sampler.adaptation_decay = parse_number(key, value);
            else if (key == "initial_scale") spec.sampler.initial_scale = parse_number(key, value);
            else if (key == "burn_in") spec.sampler.burn_in_fraction = parse_number(key, value);
            else if (key == "thinning") spec.sampler.thinning_stride = parse_integer(key, value);
            else throw ParseError("scenario: unknown key 'sampler." + key + "'");
        } else {
            throw ParseError("scenario: unknown section '[" + section + "]'");
        }
    }

    if (fixed_p_seen && h_seen)
        throw ParseError("scenario: prior.p and prior.h are mutually exclusive");
    spec.validate();
    return spec;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

std::string canonical_scenario_text(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "components = ";
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        if (i) out << ", ";
        out << signal_name(spec.components[i]);
    }
    out << "\nm = " << spec.grid_length;
    out << "\nn = " << spec.sample_count;
    out << "\nsnr = " << format_double(spec.snr);
    out << "\nestimator = " << estimator_name(spec.estimator);
    out << "\nreplications = " << spec.replications;
    out << "\nseed = " << spec.master_seed;
    out << "\nweight_rule = dirichlet";
    out << "\ncomponent_sd = " << format_double(spec.component_sd);

    out << "\n\n[noise]\nfamily = " << noise_family_name(spec.noise_family);
    if (spec.noise_family == NoiseFamily::gamma)
        out << "\nshape = " << format_double(spec.noise_params.gamma_shape);
    if (spec.noise_family == NoiseFamily::ar1)
        out << "\nphi = " << format_double(spec.noise_params.ar1_phi);
    if (spec.noise_family == NoiseFamily::arfima) {
        out << "\nd = " << format_double(spec.noise_params.arfima_d);
        out << "\ntruncation_q = " << spec.noise_params.arfima_truncation_q;
    }
    if (spec.noise_sd_override) out << "\nsigma = " << format_double(*spec.noise_sd_override);

    out << "\n\n[prior]";
    if (spec.prior.fixed_p) out << "\np = " << format_double(*spec.prior.fixed_p);
    else out << "\nh = " << format_double(spec.prior.level_exponent);
    out << "\ntau = " << format_double(spec.prior.logistic_scale);

    out << "\n\n[wavelet]\nfilter = " << wavelet_filter_name(spec.filter);
    out << "\nj0 = " << spec.primary_level;

    out << "\n\n[sampler]\niterations = " << spec.sampler.iterations;
    out << "\ntarget_accept = " << format_double(spec.sampler.target_acceptance);
    out << "\nadaptation_decay = " << format_double(spec.sampler.adaptation_decay);
    out << "\ninitial_scale = " << format_double(spec.sampler.initial_scale);
    out << "\nburn_in = " << format_double(spec.sampler.burn_in_fraction);
    out << "\nthinning = " << spec.sampler.thinning_stride;
    out << "\n";
    return out.str();
}

std::string scenario_digest(const ScenarioSpec& spec) {
    const std::string text = canonical_scenario_text(spec);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

bool equal_ignoring_estimator(const ScenarioSpec& a, const ScenarioSpec& b) {
    ScenarioSpec a_norm = a;
    ScenarioSpec b_norm = b;
    a_norm.estimator = Estimator::identity;
    b_norm.estimator = Estimator::identity;
    return canonical_scenario_text(a_norm) == canonical_scenario_text(b_norm);
}

}  // namespace agfd
