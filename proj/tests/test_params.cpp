#include <doctest.h>

#include <cmath>
#include <eomsim/constants.hpp>
#include <eomsim/params.hpp>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "helpers.hpp"

using eomsim::DerivedParams;
using eomsim::PhysicalParams;
using eomsim::derive_couplings;
using eomsim::thermal_occupancy;
using testutil::rel_eq;

namespace {

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("default parameter set matches the documented working point") {
    const auto p = PhysicalParams::defaults();
    CHECK(p.omega_m == doctest::Approx(2.0 * eomsim::constants::pi * 10.0e6).epsilon(1e-15));
    CHECK(p.quality_factor == 1.5e5);
    CHECK(p.mass == 1.0e-11);
    CHECK(p.bath_temperature == 15.0e-3);
    CHECK(p.kappa_c == doctest::Approx(0.04 * p.omega_m).epsilon(1e-15));
    CHECK(p.kappa_w == doctest::Approx(0.04 * p.omega_m).epsilon(1e-15));
    CHECK(p.delta_c == -p.omega_m);
    CHECK(p.delta_w == +p.omega_m);
    CHECK(p.omega_w == p.drive_omega_w + p.delta_w);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("derived couplings reproduce frozen reference values") {
    const auto p = PhysicalParams::defaults();
    const auto d = derive_couplings(p);

    // 20-digit references computed with arbitrary-precision arithmetic from the
    // same closed-form expressions; agreement is required at the level of
    // accumulated double rounding.
    CHECK(rel_eq(d.g0c, 952.71650024969000586, 1e-12));
    CHECK(rel_eq(d.g0w, 1.6748481917617607416, 1e-12));
    CHECK(rel_eq(d.drive_amp_c, 263984561889.31766733, 1e-12));
    CHECK(rel_eq(d.drive_amp_w, 178497261798079.42514, 1e-12));
    CHECK(rel_eq(d.gc, 5656270.7274444781919, 1e-12));
    CHECK(rel_eq(d.gw, 6723493.3325362503232, 1e-12));
    CHECK(rel_eq(d.nbar_m, 30.75759490480361521, 1e-12));
    CHECK(rel_eq(d.n_w, 1.2327439584970988787e-14, 1e-12));
    CHECK(rel_eq(d.gamma_m, p.omega_m / p.quality_factor, 1e-15));

    // Dimensionless couplings at the working point.
    CHECK(rel_eq(d.gc / p.omega_m, 0.090022344573877935999, 1e-12));
    CHECK(rel_eq(d.gw / p.omega_m, 0.1070077198718544643, 1e-12));

    // The optical cavity sits at ~2.3e15 rad/s; at 15 mK its occupancy
    // underflows to exactly zero.
    CHECK(d.n_c == 0.0);
}

TEST_CASE("derived couplings with flipped detunings match frozen references") {
    auto p = PhysicalParams::defaults();
    p.delta_c = +p.omega_m;
    p.delta_w = -p.omega_m;
    p.omega_w = p.drive_omega_w + p.delta_w;
    const auto d = derive_couplings(p);

    CHECK(rel_eq(d.g0c, 952.71655173199821339, 1e-12));
    CHECK(rel_eq(d.g0w, 1.6715018417282707102, 1e-12));
    CHECK(rel_eq(d.gc, 5656271.0330945564882, 1e-12));
    CHECK(rel_eq(d.gw, 6710059.7794242897831, 1e-12));
    CHECK(rel_eq(d.n_w, 1.3142057002238456244e-14, 1e-12));
}

TEST_CASE("thermal occupancy matches frozen references") {
    const double two_pi = 2.0 * eomsim::constants::pi;
    CHECK(rel_eq(thermal_occupancy(two_pi * 10.0e6, 15.0e-3), 30.75759490480361521, 1e-12));
    CHECK(rel_eq(thermal_occupancy(two_pi * 10.0e9, 15.0e-3), 1.2728232937738824631e-14, 1e-12));
    CHECK(rel_eq(thermal_occupancy(two_pi * 10.0e9, 50.0e-3), 6.783594731033473265e-05, 1e-12));
    CHECK(rel_eq(thermal_occupancy(two_pi * 10.0e6, 300.0), 625098.07408297039452, 1e-12));
}

TEST_CASE("thermal occupancy limiting behavior") {
    CHECK(thermal_occupancy(1.0e8, 0.0) == 0.0);
    CHECK(thermal_occupancy(1.0e8, -1.0) == 0.0);
    // Deep quantum regime: the exponent exceeds the underflow guard.
    CHECK(thermal_occupancy(1.0e15, 1.0e-6) == 0.0);
    CHECK_THROWS_AS(thermal_occupancy(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(thermal_occupancy(-1.0, 0.1), std::invalid_argument);

    // Monotone in temperature at fixed frequency.
    double prev = -1.0;
    for (double t : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
        const double n = thermal_occupancy(1.0e8, t);
        CHECK(n > prev);
        prev = n;
    }
    // Monotone decreasing in frequency at fixed temperature.
    CHECK(thermal_occupancy(1.0e8, 0.1) > thermal_occupancy(2.0e8, 0.1));

    // Classical limit: n -> kT/(hbar w) with O(1) additive correction.
    const double w_m = 2.0 * eomsim::constants::pi * 10.0e6;
    const double n_cl = thermal_occupancy(w_m, 300.0);
    const double guess = eomsim::constants::k_B * 300.0 / (eomsim::constants::hbar * w_m);
    CHECK(std::abs(n_cl - guess) < 1.0);
}

TEST_CASE("coupling strength scales as the square root of drive power") {
    auto p = PhysicalParams::defaults();
    const auto d1 = derive_couplings(p);
    p.power_c *= 4.0;
    p.power_w *= 9.0;
    const auto d2 = derive_couplings(p);
    CHECK(rel_eq(d2.gc, 2.0 * d1.gc, 1e-15));
    CHECK(rel_eq(d2.gw, 3.0 * d1.gw, 1e-15));
    // Single-quantum couplings are power independent.
    CHECK(d2.g0c == d1.g0c);
    CHECK(d2.g0w == d1.g0w);
}

TEST_CASE("zero drive power yields zero effective coupling") {
    auto p = PhysicalParams::defaults();
    p.power_c = 0.0;
    p.power_w = 0.0;
    const auto d = derive_couplings(p);
    CHECK(d.gc == 0.0);
    CHECK(d.gw == 0.0);
}

TEST_CASE("validation rejects out-of-range fields and names the offender") {
    auto base = PhysicalParams::defaults();

    auto mutated = [&](auto&& set) {
        auto p = base;
        set(p);
        return p;
    };

    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.omega_m = 0.0; }).validate(); },
                            "omega_m"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.mass = -1.0; }).validate(); },
                            "mass"));
    CHECK(throws_mentioning(
        [&] { mutated([](PhysicalParams& p) { p.bath_temperature = -0.1; }).validate(); },
        "bath_temperature"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.kappa_c = 0.0; }).validate(); },
                            "kappa_c"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.kappa_w = -5.0; }).validate(); },
                            "kappa_w"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.mu = 1.5; }).validate(); },
                            "mu"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.gap = 0.0; }).validate(); },
                            "gap"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.power_c = -1e-3; }).validate(); },
                            "power_c"));
    CHECK(throws_mentioning(
        [&] { mutated([](PhysicalParams& p) { p.lambda_c = std::nan(""); }).validate(); },
        "lambda_c"));
    CHECK(throws_mentioning(
        [&] {
            mutated([](PhysicalParams& p) { p.delta_c = std::numeric_limits<double>::infinity(); })
                .validate();
        },
        "delta_c"));
    CHECK(throws_mentioning(
        [&] { mutated([](PhysicalParams& p) { p.cavity_length = 0.0; }).validate(); },
        "cavity_length"));
    CHECK(throws_mentioning([&] { mutated([](PhysicalParams& p) { p.omega_w = -1.0; }).validate(); },
                            "omega_w"));
}
