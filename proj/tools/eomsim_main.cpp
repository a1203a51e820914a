#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eomsim/config.hpp"
#include "eomsim/sweep.hpp"

namespace {

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::vector<std::string>& axis_specs, const std::string& out_path,
                 int workers) {
    eomsim::SimConfig cfg;
    eomsim::SweepSpec spec;
    spec.workers = workers;

    // Bad input (files, keys, values) is a usage error: exit 2. Anything that
    // goes wrong while computing is exit 1.
    try {
        if (!config_path.empty()) {
            cfg = eomsim::load_config(config_path);
        } else if (const char* env = std::getenv("EOMSIM_CONFIG"); env && *env) {
            cfg = eomsim::load_config(env);
        } else {
            cfg = eomsim::SimConfig::defaults();
        }
        for (const auto& s : overrides) eomsim::apply_override(cfg, s);
        for (const auto& a : axis_specs) {
            eomsim::SweepAxis axis = eomsim::parse_axis(a);
            cfg.get(axis.key);  // throws on unknown keys
            spec.axes.push_back(std::move(axis));
        }
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const eomsim::SweepResult result = eomsim::run_sweep(cfg, spec);
        eomsim::write_csv_file(result, out_path);

        if (spec.axes.empty()) {
            const eomsim::SweepRow& row = result.rows.front();
            if (!row.stable) {
                std::cout << "model unstable: no stationary state at this operating point\n";
            } else {
                std::cout << "e_n                     = " << row.e_n << "\n"
                          << "eta_minus               = " << row.eta_minus << "\n"
                          << "fidelity_fock           = " << row.fidelity_fock << "\n"
                          << "fidelity_superposition  = " << row.fidelity_superposition << "\n"
                          << "beats_no_cloning_fock   = " << (row.beats_no_cloning_fock ? 1 : 0)
                          << "\n"
                          << "beats_no_cloning_sup    = "
                          << (row.beats_no_cloning_superposition ? 1 : 0) << "\n"
                          << "quad_error              = " << row.quad_error << "\n";
            }
        } else {
            std::size_t unstable = 0;
            for (const auto& row : result.rows)
                if (!row.stable) ++unstable;
            std::cout << "wrote " << result.rows.size() << " rows to " << out_path;
            if (unstable > 0) std::cout << " (" << unstable << " unstable)";
            std::cout << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "eomsim: stationary entanglement and teleportation figures of merit for a\n"
        "mechanically mediated microwave-optical interface"};
    app.set_version_flag("--version", "eomsim 0.1.0");
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate",
                                   "Evaluate one operating point or a parameter sweep");
    std::string config_path;
    sim->add_option("--config", config_path,
                    "Config file, 'key = value' lines (default: $EOMSIM_CONFIG if set, "
                    "else built-in defaults)");
    std::vector<std::string> overrides;
    sim->add_option("--set", overrides, "Override one config key, key=value (repeatable)");
    std::vector<std::string> axis_specs;
    sim->add_option("--sweep", axis_specs,
                    "Sweep axis, key=v1,v2,... or key=start:stop:count "
                    "(repeatable; first axis is slowest)");
    std::string out_path = "sweep.csv";
    sim->add_option("--out", out_path, "Output CSV path (default sweep.csv)");
    int sim_workers = 0;
    sim->add_option("--workers", sim_workers, "Worker threads (default: hardware concurrency)");

    auto* rep = app.add_subcommand(
        "reproduce", "Write the canned parameter studies (CSV, gnuplot .dat, summary)");
    std::string preset;
    rep->add_option("--preset", preset, "fig2 | fig3 | fig4")->required();
    std::string out_dir;
    rep->add_option("--out", out_dir, "Output directory")->required();
    bool flip = false;
    rep->add_flag("--flip-detunings", flip,
                  "Negate both detunings and the microwave filter centre (mirrored drive "
                  "configuration; unstable at the reference powers)");
    int rep_workers = 0;
    rep->add_option("--workers", rep_workers, "Worker threads (default: hardware concurrency)");

    auto* val = app.add_subcommand("validate", "Run the internal oracle battery");
    int budget = 200;
    val->add_option("--budget", budget, "Random-sample budget (default 200)")
        ->check(CLI::PositiveNumber);
    std::uint64_t seed = 1u;
    val->add_option("--seed", seed, "Seed for the deterministic sample streams (default 1)");
    std::string report_path = "validate_report.json";
    val->add_option("--report", report_path, "JSON report path (default validate_report.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*sim) return run_simulate(config_path, overrides, axis_specs, out_path, sim_workers);

    if (*rep) {
        try {
            return eomsim::reproduce(preset, out_dir, flip, rep_workers);
        } catch (const std::invalid_argument& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    // validate
    std::optional<double> tol_override;
    if (const char* env = std::getenv("EOMSIM_ORACLE_TOL"); env && *env) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0.0)) {
            std::cerr << "usage error: EOMSIM_ORACLE_TOL='" << env
                      << "' is not a positive number\n";
            return 2;
        }
        tol_override = tol;
    }
    try {
        return eomsim::validate(budget, seed, report_path, tol_override);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
