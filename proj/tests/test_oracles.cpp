#include <doctest.h>

#include <cmath>
#include <eomsim/oracles.hpp>
#include <eomsim/params.hpp>
#include <eomsim/spectra.hpp>
#include <stdexcept>

#include "helpers.hpp"

using eomsim::FilterSpec;
using eomsim::PhysicalParams;
using eomsim::RandomStream;
using eomsim::check_decoupled_output;
using eomsim::check_fidelity_closed_forms;
using eomsim::check_lyapunov_vs_spectrum;
using eomsim::random_filters;
using eomsim::random_stable_model;
using eomsim::run_all_oracles;

TEST_CASE("random stream is deterministic and spans the requested range") {
    RandomStream a(42);
    RandomStream b(42);
    RandomStream c(43);

    bool all_equal = true;
    bool any_diff_seed = false;
    for (int i = 0; i < 64; ++i) {
        const double va = a.uniform();
        const double vb = b.uniform();
        const double vc = c.uniform();
        all_equal = all_equal && (va == vb);
        any_diff_seed = any_diff_seed || (va != vc);
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff_seed);

    RandomStream d(7);
    for (int i = 0; i < 32; ++i) {
        const double v = d.uniform(-3.0, 5.0);
        CHECK(v >= -3.0);
        CHECK(v < 5.0);
    }
}

TEST_CASE("random stable models are stable, in range, and reproducible") {
    RandomStream rng(2024);
    RandomStream rng_replay(2024);

    for (int i = 0; i < 20; ++i) {
        const auto m = random_stable_model(rng);
        const auto m2 = random_stable_model(rng_replay);
        CHECK(m.stable);
        CHECK((m.drift - m2.drift).cwiseAbs().maxCoeff() == 0.0);
        CHECK((m.diffusion - m2.diffusion).cwiseAbs().maxCoeff() == 0.0);

        // Normalised couplings and detunings stay in the documented windows.
        CHECK(m.drift(3, 0) >= 0.0);
        CHECK(m.drift(3, 0) <= 0.2);
        CHECK(m.drift(5, 0) >= 0.0);
        CHECK(m.drift(5, 0) <= 0.2);
        CHECK(std::abs(m.drift(2, 3)) <= 2.0);
        CHECK(std::abs(m.drift(4, 5)) <= 2.0);
    }
}

TEST_CASE("random filters stay in the documented windows") {
    const auto p = PhysicalParams::defaults();
    RandomStream rng(99);
    for (int i = 0; i < 20; ++i) {
        const FilterSpec f = random_filters(rng, p.omega_m);
        CHECK(f.epsilon_c(p.omega_m) >= 0.5);
        CHECK(f.epsilon_c(p.omega_m) <= 50.0);
        CHECK(std::abs(f.omega_center_c) <= 2.0 * p.omega_m);
        CHECK(std::abs(f.omega_center_w) <= 2.0 * p.omega_m);
        CHECK_NOTHROW(f.validate());
    }
}

TEST_CASE("spectral integration matches the Lyapunov solution at the working point") {
    const auto p = PhysicalParams::defaults();
    const auto m = eomsim::build_model(eomsim::derive_couplings(p), p);
    const auto rep = check_lyapunov_vs_spectrum(m);
    CHECK(rep.passed);
    CHECK(rep.max_rel_err <= 1e-7);
    CHECK(rep.budget > 0);

    // The tolerance is honoured: nothing real reaches 1e-16.
    const auto strict = check_lyapunov_vs_spectrum(m, 1e-16);
    CHECK(!strict.passed);
}

TEST_CASE("decoupled output oracle passes for cold and warm baths") {
    const auto p = PhysicalParams::defaults();
    const auto f = FilterSpec::from_normalized(7.0, -1.0, 1.0, p.omega_m);

    const auto cold = check_decoupled_output(f, p, eomsim::thermal_occupancy(p.omega_w, p.bath_temperature));
    CHECK(cold.passed);
    CHECK(cold.max_abs_err <= 1e-6);

    const auto warm = check_decoupled_output(f, p, 0.5);
    CHECK(warm.passed);
    CHECK(warm.max_abs_err <= 1e-6);
}

TEST_CASE("decoupled output check is sensitive to the bath occupancy") {
    // Anti-vacuity: the quantity the oracle pins really does move when the
    // microwave bath heats up, so agreement is informative.
    const auto m = testutil::make_model(-0.7, 1.3, 0.0, 0.0, 0.6);
    const auto p = PhysicalParams::defaults();
    const auto f = FilterSpec::from_normalized(7.0, -1.0, 1.0, p.omega_m);
    const auto cm = eomsim::output_cm(m, f);
    CHECK((cm.Bp - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > 0.05);
}

TEST_CASE("fidelity closed forms agree with quadrature on random physical kernels") {
    const auto rep = check_fidelity_closed_forms(7, 25);
    CHECK(rep.passed);
    CHECK(rep.max_abs_err <= 1e-6);
    CHECK(rep.budget == 25);

    // Bitwise reproducible for a fixed seed.
    const auto replay = check_fidelity_closed_forms(7, 25);
    CHECK(replay.max_abs_err == rep.max_abs_err);
    CHECK(replay.max_rel_err == rep.max_rel_err);

    // The reported maximum may be dominated by the fixed anchor kernels, so
    // probe the random sampling directly: an unreachable tolerance applies
    // only to the sampled kernels and must fail through them.
    const auto strict = check_fidelity_closed_forms(8, 25, 1e-18);
    CHECK(!strict.passed);
    CHECK(strict.max_abs_err > 1e-18);
}

TEST_CASE("full oracle battery") {
    const auto reports = run_all_oracles(12, 5);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].name == "lyapunov_vs_spectrum");
    CHECK(reports[1].name == "decoupled_output");
    CHECK(reports[2].name == "fidelity_closed_forms");
    for (const auto& r : reports) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.budget > 0);
        CHECK(r.max_abs_err >= 0.0);
    }

    SUBCASE("deterministic across invocations") {
        const auto replay = run_all_oracles(12, 5);
        REQUIRE(replay.size() == 3);
        for (std::size_t i = 0; i < replay.size(); ++i) {
            CHECK(replay[i].max_abs_err == reports[i].max_abs_err);
            CHECK(replay[i].max_rel_err == reports[i].max_rel_err);
        }
    }

    SUBCASE("budget must be positive") {
        CHECK_THROWS_AS(run_all_oracles(0, 5), std::invalid_argument);
        CHECK_THROWS_AS(run_all_oracles(-3, 5), std::invalid_argument);
    }

    SUBCASE("tolerance override reaches every check") {
        const auto strict = run_all_oracles(4, 5, 1e-18);
        bool any_failed = false;
        for (const auto& r : strict) any_failed = any_failed || !r.passed;
        CHECK(any_failed);
    }
}
