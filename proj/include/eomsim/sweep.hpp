#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eomsim/config.hpp"
#include "eomsim/metrics.hpp"

namespace eomsim {

// One sweep dimension. `key` is any config key; `values` the grid points.
struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

// Parses "key=v1,v2,..." or "key=start:stop:count" (inclusive linspace).
SweepAxis parse_axis(const std::string& text);

struct SweepSpec {
    std::vector<SweepAxis> axes;  // first axis slowest, last fastest
    int workers = 0;              // 0 = hardware concurrency
};

// One evaluated grid point. When the linearised model is unstable no
// stationary state exists; `stable` is false and the metric fields are NaN
// (serialised as empty CSV cells).
struct SweepRow {
    std::vector<double> axis_values;
    bool stable = false;
    double e_n = 0.0;
    double eta_minus = 0.0;
    double fidelity_fock = 0.0;
    double fidelity_superposition = 0.0;
    bool beats_no_cloning_fock = false;
    bool beats_no_cloning_superposition = false;
    double quad_error = 0.0;
};

struct SweepResult {
    std::vector<std::string> axis_keys;
    std::vector<SweepRow> rows;  // row-major over the axes, first axis slowest
    SimConfig base;
};

// Evaluates the cartesian product of the axes over `base`. Rows are computed
// independently (each one single-threaded) and stored by grid index, so the
// result is identical regardless of the worker count.
SweepResult run_sweep(const SimConfig& base, const SweepSpec& spec);

// CSV with a '#' preamble echoing the resolved base config, then one header
// row and one record per grid point. Floats use %.17g so values round-trip;
// booleans are 0/1; line endings are plain LF.
void write_csv(const SweepResult& result, std::ostream& out);
void write_csv_file(const SweepResult& result, const std::string& path);

// Two-column (or grouped) gnuplot-friendly .dat export: one block per value of
// the slow axis, blank-line separated, x = fast axis, y = chosen metric.
void write_dat_file(const SweepResult& result, const std::string& path,
                    const std::string& metric);

// Canned parameter studies:
//   fig2 : E_N of the filtered outputs vs optical filter centre, for
//          epsilon in {1, 5, 20, 100}
//   fig3 : teleportation fidelity of |1> on the same axis, epsilon in
//          {5, 20, 100, 1000}
//   fig4 : as fig3 for the balanced superposition input
// Writes <preset>.csv, <preset>.dat and <preset>_summary.txt into out_dir.
// `flip_detunings` negates both effective detunings (and the matching filter
// centres); with the reference drive powers that side of the phase diagram is
// unstable and the rows report accordingly. Returns a process exit code.
int reproduce(const std::string& preset, const std::string& out_dir,
              bool flip_detunings, int workers = 0);

// Runs the oracle battery, prints one table row per check and writes a JSON
// report. Returns 0 when every check passes, 1 otherwise.
int validate(int budget, std::uint64_t seed, const std::string& report_path,
             std::optional<double> tol_override);

}  // namespace eomsim
