#include "eomsim/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eomsim/constants.hpp"

namespace eomsim {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("PhysicalParams." + field + " " + what);
}

void require_finite(double v, const std::string& field) {
    require(std::isfinite(v), field, "must be finite");
}

}  // namespace

PhysicalParams PhysicalParams::defaults() {
    PhysicalParams p;
    p.omega_m = 2.0 * constants::pi * 10.0e6;
    p.quality_factor = 1.5e5;
    p.mass = 1.0e-11;
    p.bath_temperature = 15.0e-3;

    p.kappa_w = 0.04 * p.omega_m;
    p.power_w = 42.0e-3;
    p.drive_omega_w = 2.0 * constants::pi * 10.0e9;
    p.mu = 0.013;
    p.gap = 100.0e-9;

    p.lambda_c = 810.0e-9;
    p.kappa_c = 0.04 * p.omega_m;
    p.power_c = 3.4e-3;
    p.cavity_length = 1.0e-3;

    p.delta_c = -p.omega_m;
    p.delta_w = +p.omega_m;
    // The microwave cavity frequency follows the stated drive and detuning.
    p.omega_w = p.drive_omega_w + p.delta_w;
    return p;
}

void PhysicalParams::validate() const {
    require_finite(omega_m, "omega_m");
    require(omega_m > 0.0, "omega_m", "must be positive");
    require_finite(quality_factor, "quality_factor");
    require(quality_factor > 0.0, "quality_factor", "must be positive");
    require_finite(mass, "mass");
    require(mass > 0.0, "mass", "must be positive");
    require_finite(bath_temperature, "bath_temperature");
    require(bath_temperature >= 0.0, "bath_temperature", "must be non-negative");

    require_finite(omega_w, "omega_w");
    require(omega_w > 0.0, "omega_w", "must be positive");
    require_finite(kappa_w, "kappa_w");
    require(kappa_w > 0.0, "kappa_w", "must be positive");
    require_finite(power_w, "power_w");
    require(power_w >= 0.0, "power_w", "must be non-negative");
    require_finite(drive_omega_w, "drive_omega_w");
    require(drive_omega_w > 0.0, "drive_omega_w", "must be positive");
    require_finite(mu, "mu");
    require(mu > 0.0 && mu < 1.0, "mu", "must lie strictly between 0 and 1");
    require_finite(gap, "gap");
    require(gap > 0.0, "gap", "must be positive");

    require_finite(lambda_c, "lambda_c");
    require(lambda_c > 0.0, "lambda_c", "must be positive");
    require_finite(kappa_c, "kappa_c");
    require(kappa_c > 0.0, "kappa_c", "must be positive");
    require_finite(power_c, "power_c");
    require(power_c >= 0.0, "power_c", "must be non-negative");
    require_finite(cavity_length, "cavity_length");
    require(cavity_length > 0.0, "cavity_length", "must be positive");

    require_finite(delta_c, "delta_c");
    require_finite(delta_w, "delta_w");
}

double thermal_occupancy(double omega, double temperature) {
    if (!(omega > 0.0)) throw std::invalid_argument("thermal_occupancy: omega must be positive");
    if (temperature <= 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::k_B * temperature);
    // exp(700) is near the double overflow limit; the occupancy there is
    // ~1e-304 and indistinguishable from zero for every use in this project.
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

DerivedParams derive_couplings(const PhysicalParams& p) {
    p.validate();

    DerivedParams d;
    d.gamma_m = p.omega_m / p.quality_factor;

    // Zero-point length for dimensionless quadratures with [q, p] = i and
    // vacuum variance 1/2 on each.
    const double x_zp = std::sqrt(constants::hbar / (p.mass * p.omega_m));

    const double omega_drive_c = 2.0 * constants::pi * constants::c_light / p.lambda_c;
    const double omega_cav_c = omega_drive_c + p.delta_c;

    d.g0c = (omega_cav_c / p.cavity_length) * x_zp;
    d.g0w = (p.mu * p.omega_w / (2.0 * p.gap)) * x_zp;

    d.drive_amp_c = std::sqrt(2.0 * p.power_c * p.kappa_c / (constants::hbar * omega_drive_c));
    d.drive_amp_w = std::sqrt(2.0 * p.power_w * p.kappa_w / (constants::hbar * p.drive_omega_w));

    const double alpha_s = d.drive_amp_c / std::hypot(p.kappa_c, p.delta_c);
    const double beta_s = d.drive_amp_w / std::hypot(p.kappa_w, p.delta_w);
    d.gc = d.g0c * std::sqrt(2.0) * alpha_s;
    d.gw = d.g0w * std::sqrt(2.0) * beta_s;

    d.nbar_m = thermal_occupancy(p.omega_m, p.bath_temperature);
    d.n_w = thermal_occupancy(p.omega_w, p.bath_temperature);
    d.n_c = thermal_occupancy(omega_cav_c, p.bath_temperature);

    for (double v : {d.g0c, d.g0w, d.drive_amp_c, d.drive_amp_w, d.gc, d.gw,
                     d.nbar_m, d.n_w, d.n_c, d.gamma_m}) {
        if (!std::isfinite(v)) throw std::runtime_error("derive_couplings produced a non-finite value");
    }
    return d;
}

}  // namespace eomsim
