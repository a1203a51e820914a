#include "eomsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace eomsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw std::invalid_argument("'" + t + "' is not a number");
    return v;
}

}  // namespace

SimConfig SimConfig::defaults() {
    SimConfig c;
    c.physical = PhysicalParams::defaults();
    // Narrow filters centred on the entangled sideband pair.
    c.filters = FilterSpec::from_normalized(100.0, -1.0, 1.0, c.physical.omega_m);
    return c;
}

void SimConfig::set(const std::string& key, double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("config key '" + key + "': value must be finite");

    PhysicalParams& p = physical;
    if (key == "omega_m") p.omega_m = value;
    else if (key == "quality_factor") p.quality_factor = value;
    else if (key == "mass") p.mass = value;
    else if (key == "bath_temperature") p.bath_temperature = value;
    else if (key == "omega_w") p.omega_w = value;
    else if (key == "kappa_w") p.kappa_w = value;
    else if (key == "power_w") p.power_w = value;
    else if (key == "drive_omega_w") {
        p.drive_omega_w = value;
        p.omega_w = p.drive_omega_w + p.delta_w;
    } else if (key == "mu") p.mu = value;
    else if (key == "gap") p.gap = value;
    else if (key == "lambda_c") p.lambda_c = value;
    else if (key == "kappa_c") p.kappa_c = value;
    else if (key == "power_c") p.power_c = value;
    else if (key == "cavity_length") p.cavity_length = value;
    else if (key == "delta_c") p.delta_c = value;
    else if (key == "delta_w") {
        // The microwave cavity frequency tracks the stated drive and detuning;
        // assign omega_w afterwards to decouple them.
        p.delta_w = value;
        p.omega_w = p.drive_omega_w + p.delta_w;
    } else if (key == "tau_c") filters.tau_c = value;
    else if (key == "tau_w") filters.tau_w = value;
    else if (key == "omega_center_c") filters.omega_center_c = value;
    else if (key == "omega_center_w") filters.omega_center_w = value;
    else if (key == "epsilon") {
        if (!(value > 0.0)) throw std::invalid_argument("config key 'epsilon': must be positive");
        filters.tau_c = value / p.omega_m;
        filters.tau_w = value / p.omega_m;
    } else if (key == "omega_c_norm") filters.omega_center_c = value * p.omega_m;
    else if (key == "omega_w_norm") filters.omega_center_w = value * p.omega_m;
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

double SimConfig::get(const std::string& key) const {
    const PhysicalParams& p = physical;
    if (key == "omega_m") return p.omega_m;
    if (key == "quality_factor") return p.quality_factor;
    if (key == "mass") return p.mass;
    if (key == "bath_temperature") return p.bath_temperature;
    if (key == "omega_w") return p.omega_w;
    if (key == "kappa_w") return p.kappa_w;
    if (key == "power_w") return p.power_w;
    if (key == "drive_omega_w") return p.drive_omega_w;
    if (key == "mu") return p.mu;
    if (key == "gap") return p.gap;
    if (key == "lambda_c") return p.lambda_c;
    if (key == "kappa_c") return p.kappa_c;
    if (key == "power_c") return p.power_c;
    if (key == "cavity_length") return p.cavity_length;
    if (key == "delta_c") return p.delta_c;
    if (key == "delta_w") return p.delta_w;
    if (key == "tau_c") return filters.tau_c;
    if (key == "tau_w") return filters.tau_w;
    if (key == "omega_center_c") return filters.omega_center_c;
    if (key == "omega_center_w") return filters.omega_center_w;
    if (key == "epsilon") return filters.tau_c * p.omega_m;
    if (key == "omega_c_norm") return filters.omega_center_c / p.omega_m;
    if (key == "omega_w_norm") return filters.omega_center_w / p.omega_m;
    throw std::invalid_argument("unknown config key '" + key + "'");
}

const std::vector<std::string>& SimConfig::si_keys() {
    static const std::vector<std::string> keys = {
        "omega_m", "quality_factor", "mass", "bath_temperature",
        "omega_w", "kappa_w", "power_w", "drive_omega_w", "mu", "gap",
        "lambda_c", "kappa_c", "power_c", "cavity_length",
        "delta_c", "delta_w",
        "tau_c", "tau_w", "omega_center_c", "omega_center_w",
    };
    return keys;
}

void SimConfig::validate() const {
    physical.validate();
    filters.validate();
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");

    SimConfig c = SimConfig::defaults();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        const std::size_t eq = stripped.find('=');
        const std::string where = path + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos)
            throw std::invalid_argument(where + "expected 'key = value'");
        try {
            c.set(trim(stripped.substr(0, eq)), parse_double(stripped.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    return c;
}

void apply_override(SimConfig& config, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override '" + assignment + "': expected key=value");
    try {
        config.set(trim(assignment.substr(0, eq)), parse_double(assignment.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("override '" + assignment + "': " + e.what());
    }
}

}  // namespace eomsim
