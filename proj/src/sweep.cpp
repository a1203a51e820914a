#include "eomsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "eomsim/oracles.hpp"

namespace eomsim {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        v.push_back(start);
        return v;
    }
    for (int i = 0; i < count; ++i)
        v.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
    return v;
}

}  // namespace

SweepAxis parse_axis(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep axis '" + text + "': expected key=values");

    SweepAxis axis;
    axis.key = text.substr(0, eq);
    const std::string spec = text.substr(eq + 1);
    if (axis.key.empty() || spec.empty())
        throw std::invalid_argument("sweep axis '" + text + "': expected key=values");

    auto to_double = [&text](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("sweep axis '" + text + "': '" + s + "' is not a number");
        }
    };

    if (spec.find(':') != std::string::npos) {
        // start:stop:count, inclusive on both ends
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            const std::size_t colon = spec.find(':', pos);
            parts.push_back(spec.substr(pos, colon - pos));
            if (colon == std::string::npos) break;
            pos = colon + 1;
        }
        if (parts.size() != 3)
            throw std::invalid_argument("sweep axis '" + text + "': expected start:stop:count");
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        const double count_d = to_double(parts[2]);
        const int count = static_cast<int>(count_d);
        if (count < 1 || count_d != count)
            throw std::invalid_argument("sweep axis '" + text + "': count must be a positive integer");
        axis.values = linspace(start, stop, count);
    } else {
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = spec.find(',', pos);
            axis.values.push_back(to_double(spec.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return axis;
}

namespace {

SweepRow evaluate_point(const SimConfig& base, const std::vector<std::string>& keys,
                        const std::vector<double>& values) {
    SimConfig c = base;
    for (std::size_t i = 0; i < keys.size(); ++i) c.set(keys[i], values[i]);
    c.validate();

    SweepRow row;
    row.axis_values = values;

    const DerivedParams d = derive_couplings(c.physical);
    const StateSpaceModel model = build_model(d, c.physical);
    row.stable = model.stable;
    if (!model.stable) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.e_n = row.eta_minus = row.fidelity_fock = row.fidelity_superposition = nan;
        row.quad_error = nan;
        return row;
    }

    const CovarianceSet cm = output_cm(model, c.filters);
    const TeleportationReport t = teleportation_report(cm);
    row.e_n = t.e_n;
    row.eta_minus = t.eta_minus;
    row.fidelity_fock = t.fidelity_fock;
    row.fidelity_superposition = t.fidelity_superposition;
    row.beats_no_cloning_fock = t.beats_no_cloning_fock;
    row.beats_no_cloning_superposition = t.beats_no_cloning_superposition;
    row.quad_error = cm.quad_error;
    return row;
}

}  // namespace

SweepResult run_sweep(const SimConfig& base, const SweepSpec& spec) {
    base.validate();

    SweepResult result;
    result.base = base;
    std::size_t total = 1;
    for (const auto& axis : spec.axes) {
        if (axis.values.empty())
            throw std::invalid_argument("sweep axis '" + axis.key + "' has no values");
        base.get(axis.key);  // reject unknown keys before spawning workers
        result.axis_keys.push_back(axis.key);
        total *= axis.values.size();
    }
    result.rows.resize(total);

    // Row-major decode: first axis slowest. Each grid point is evaluated
    // single-threaded, so the stored rows do not depend on the worker count.
    auto values_for = [&spec](std::size_t index) {
        std::vector<double> values(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const std::size_t n = spec.axes[a].values.size();
            values[a] = spec.axes[a].values[index % n];
            index /= n;
        }
        return values;
    };

    int workers = spec.workers > 0 ? spec.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<std::size_t>(workers) > total) workers = static_cast<int>(total);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                result.rows[i] = evaluate_point(base, result.axis_keys, values_for(i));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
                next.store(total);
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (!first_error.empty()) throw std::runtime_error(first_error);
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "# eomsim sweep\n# config:\n";
    for (const auto& key : SimConfig::si_keys())
        out << "#   " << key << " = " << fmt17(result.base.get(key)) << "\n";
    if (!result.axis_keys.empty()) {
        out << "# axes:";
        for (const auto& k : result.axis_keys) out << " " << k;
        out << " (first slowest)\n";
    }

    for (const auto& k : result.axis_keys) out << k << ",";
    out << "stable,e_n,eta_minus,fidelity_fock,fidelity_superposition,"
           "beats_no_cloning_fock,beats_no_cloning_superposition,quad_error\n";

    for (const auto& row : result.rows) {
        for (double v : row.axis_values) out << fmt17(v) << ",";
        if (row.stable) {
            out << "1," << fmt17(row.e_n) << "," << fmt17(row.eta_minus) << ","
                << fmt17(row.fidelity_fock) << "," << fmt17(row.fidelity_superposition) << ","
                << (row.beats_no_cloning_fock ? 1 : 0) << ","
                << (row.beats_no_cloning_superposition ? 1 : 0) << "," << fmt17(row.quad_error)
                << "\n";
        } else {
            // No stationary state: metric cells stay empty.
            out << "0,,,,,,,\n";
        }
    }
}

void write_csv_file(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(result, out);
    if (!out) throw std::runtime_error("writing '" + path + "' failed");
}

namespace {

double metric_value(const SweepRow& row, const std::string& metric) {
    if (metric == "e_n") return row.e_n;
    if (metric == "eta_minus") return row.eta_minus;
    if (metric == "fidelity_fock") return row.fidelity_fock;
    if (metric == "fidelity_superposition") return row.fidelity_superposition;
    if (metric == "quad_error") return row.quad_error;
    throw std::invalid_argument("unknown metric '" + metric + "'");
}

}  // namespace

void write_dat_file(const SweepResult& result, const std::string& path,
                    const std::string& metric) {
    if (result.axis_keys.empty() || result.axis_keys.size() > 2)
        throw std::invalid_argument("write_dat_file expects one or two sweep axes");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");

    const std::string& fast = result.axis_keys.back();
    out << "# " << metric << " vs " << fast;
    if (result.axis_keys.size() == 2)
        out << ", one block per " << result.axis_keys.front();
    out << "\n# unstable points are omitted\n";

    std::size_t fast_n = result.rows.size();
    if (result.axis_keys.size() == 2) {
        // Fast axis length = number of distinct trailing values per block.
        fast_n = 0;
        const double first_slow = result.rows.front().axis_values[0];
        for (const auto& row : result.rows) {
            if (row.axis_values[0] != first_slow) break;
            ++fast_n;
        }
    }

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (result.axis_keys.size() == 2 && i > 0 && i % fast_n == 0) out << "\n";
        const auto& row = result.rows[i];
        if (!row.stable) continue;
        if (result.axis_keys.size() == 2)
            out << fmt17(row.axis_values[1]) << " " << fmt17(metric_value(row, metric)) << " # "
                << result.axis_keys[0] << "=" << fmt17(row.axis_values[0]) << "\n";
        else
            out << fmt17(row.axis_values[0]) << " " << fmt17(metric_value(row, metric)) << "\n";
    }
    if (!out) throw std::runtime_error("writing '" + path + "' failed");
}

namespace {

struct Preset {
    std::string metric;       // headline metric for the .dat and summary
    std::vector<double> epsilons;
    double x_start, x_stop;
    int x_count;
};

Preset preset_for(const std::string& name) {
    if (name == "fig2") return {"e_n", {1.0, 5.0, 20.0, 100.0}, -2.0, 0.0, 201};
    if (name == "fig3") return {"fidelity_fock", {5.0, 20.0, 100.0, 1000.0}, -1.5, -0.5, 201};
    if (name == "fig4")
        return {"fidelity_superposition", {5.0, 20.0, 100.0, 1000.0}, -1.5, -0.5, 201};
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig2, fig3 or fig4)");
}

}  // namespace

int reproduce(const std::string& preset_name, const std::string& out_dir, bool flip_detunings,
              int workers) {
    const Preset preset = preset_for(preset_name);

    SimConfig base = SimConfig::defaults();
    if (flip_detunings) {
        // Mirror image of the default drive configuration. The time-reversal
        // symmetry of the spectra maps one onto the other exactly when a
        // stationary state exists; with the reference powers this side is
        // unstable, and the rows record that.
        base.set("delta_c", -base.physical.delta_c);
        base.set("delta_w", -base.physical.delta_w);
        base.set("omega_w_norm", -base.get("omega_w_norm"));
    }

    SweepSpec spec;
    spec.workers = workers;
    spec.axes.push_back({"epsilon", preset.epsilons});
    std::vector<double> centres = linspace(preset.x_start, preset.x_stop, preset.x_count);
    if (flip_detunings)
        for (double& c : centres) c = -c;
    spec.axes.push_back({"omega_c_norm", centres});

    const SweepResult result = run_sweep(base, spec);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_csv_file(result, (dir / (preset_name + ".csv")).string());
    write_dat_file(result, (dir / (preset_name + ".dat")).string(), preset.metric);

    std::ofstream summary(dir / (preset_name + "_summary.txt"), std::ios::binary);
    if (!summary) throw std::runtime_error("cannot write summary file");

    summary << "preset " << preset_name << (flip_detunings ? " (flipped detunings)" : "") << "\n";
    summary << "delta_c = " << fmt6(base.get("delta_c") / base.physical.omega_m)
            << " omega_m, delta_w = " << fmt6(base.get("delta_w") / base.physical.omega_m)
            << " omega_m, omega_w_norm = " << fmt6(base.get("omega_w_norm")) << "\n";

    const std::size_t n_fast = centres.size();
    std::size_t unstable = 0;
    for (const auto& row : result.rows)
        if (!row.stable) ++unstable;
    summary << "grid points: " << result.rows.size() << ", unstable: " << unstable << "\n";

    for (std::size_t e = 0; e < preset.epsilons.size(); ++e) {
        const SweepRow* best = nullptr;
        for (std::size_t i = 0; i < n_fast; ++i) {
            const SweepRow& row = result.rows[e * n_fast + i];
            if (!row.stable) continue;
            if (!best || metric_value(row, preset.metric) > metric_value(*best, preset.metric))
                best = &row;
        }
        summary << "epsilon = " << fmt6(preset.epsilons[e]) << ": ";
        if (!best) {
            summary << "no stable grid points\n";
            continue;
        }
        summary << "peak " << preset.metric << " = " << fmt6(metric_value(*best, preset.metric))
                << " at omega_c_norm = " << fmt6(best->axis_values[1]);
        if (preset.metric != "e_n") {
            const bool beats = preset.metric == "fidelity_fock"
                                   ? best->beats_no_cloning_fock
                                   : best->beats_no_cloning_superposition;
            summary << (beats ? " (beats the no-cloning bound 2/3)"
                              : " (below the no-cloning bound 2/3)");
        }
        summary << "\n";
    }
    if (unstable == result.rows.size())
        summary << "every grid point is unstable at these drive powers; "
                   "no stationary spectra exist\n";
    if (!summary) throw std::runtime_error("writing summary file failed");
    return 0;
}

int validate(int budget, std::uint64_t seed, const std::string& report_path,
             std::optional<double> tol_override) {
    const std::vector<OracleReport> reports = run_all_oracles(budget, seed, tol_override);

    std::printf("%-24s %13s %13s %9s %7s\n", "oracle", "max_abs_err", "max_rel_err", "samples",
                "status");
    bool all = true;
    for (const auto& r : reports) {
        std::printf("%-24s %13.3e %13.3e %9d %7s\n", r.name.c_str(), r.max_abs_err, r.max_rel_err,
                    r.budget, r.passed ? "pass" : "FAIL");
        all = all && r.passed;
    }

    nlohmann::json j;
    j["budget"] = budget;
    j["seed"] = seed;
    if (tol_override)
        j["tolerance_override"] = *tol_override;
    else
        j["tolerance_override"] = nullptr;
    j["all_passed"] = all;
    j["oracles"] = nlohmann::json::array();
    for (const auto& r : reports) {
        j["oracles"].push_back({{"name", r.name},
                                {"max_abs_err", r.max_abs_err},
                                {"max_rel_err", r.max_rel_err},
                                {"passed", r.passed},
                                {"budget", r.budget}});
    }
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + report_path + "' for writing");
    out << j.dump(2) << "\n";

    return all ? 0 : 1;
}

}  // namespace eomsim
