#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eomsim/params.hpp"
#include "eomsim/spectra.hpp"

namespace eomsim {

// One operating point: device parameters plus the output filters.
//
// Config files are plain "key = value" lines; '#' starts a comment and blank
// lines are skipped. Values are doubles in SI units. On top of the SI keys
// three conveniences are accepted, resolved against the current omega_m at
// the moment they are applied (order matters and is the file/CLI order):
//
//   epsilon        -> tau_c = tau_w = epsilon / omega_m
//   omega_c_norm   -> omega_center_c = omega_c_norm * omega_m
//   omega_w_norm   -> omega_center_w = omega_w_norm * omega_m
struct SimConfig {
    PhysicalParams physical;
    FilterSpec filters;

    static SimConfig defaults();

    // Applies one key; throws std::invalid_argument on an unknown key or a
    // non-finite value.
    void set(const std::string& key, double value);
    double get(const std::string& key) const;

    // Canonical SI keys in echo order (used for the CSV preamble).
    static const std::vector<std::string>& si_keys();

    void validate() const;
};

// Parses a config file. Errors carry the file name and 1-based line number.
SimConfig load_config(const std::string& path);

// Applies a "key=value" override string (the CLI --set form).
void apply_override(SimConfig& config, const std::string& assignment);

}  // namespace eomsim
