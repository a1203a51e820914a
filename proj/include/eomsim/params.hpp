#pragma once

#include <string>

namespace eomsim {

// Device and drive parameters, all in SI units (angular frequencies in rad/s).
//
// The system is a lumped-element microwave cavity and a driven optical cavity,
// both coupled to the same mechanical resonator. A fraction mu of the microwave
// capacitance is the movable capacitor that provides the electromechanical
// coupling; the optical coupling comes from the usual cavity-length modulation.
struct PhysicalParams {
    // Mechanics
    double omega_m = 0.0;          // mechanical angular frequency
    double quality_factor = 0.0;   // Q = omega_m / gamma_m
    double mass = 0.0;             // effective mass, kg
    double bath_temperature = 0.0; // K

    // Microwave cavity
    double omega_w = 0.0;          // cavity angular frequency
    double kappa_w = 0.0;          // amplitude decay rate
    double power_w = 0.0;          // drive power, W
    double drive_omega_w = 0.0;    // drive angular frequency
    double mu = 0.0;               // movable fraction of the total capacitance, 0 < mu < 1
    double gap = 0.0;              // capacitor gap, m

    // Optical cavity
    double lambda_c = 0.0;         // drive wavelength, m
    double kappa_c = 0.0;          // amplitude decay rate
    double power_c = 0.0;          // drive power, W
    double cavity_length = 0.0;    // m

    // Detunings of the cavities from their drives, in the rotating frames used
    // throughout (positive = cavity above the drive).
    double delta_c = 0.0;
    double delta_w = 0.0;

    // Reference working point: 10 MHz / 10 GHz / 1064 nm device at 15 mK with
    // the red-detuned optical drive (delta_c = -omega_m) and blue-detuned
    // microwave drive (delta_w = +omega_m). This is the regime where the
    // down-conversion pair production happens on the optical side and the
    // beam-splitter readout on the microwave side, and the linearised dynamics
    // are stable.
    static PhysicalParams defaults();

    // Throws std::invalid_argument naming the offending field if any entry is
    // outside its physical domain.
    void validate() const;
};

// Quantities computed from PhysicalParams. Also SI (rad/s for rates).
struct DerivedParams {
    double g0c = 0.0;        // single-photon optomechanical coupling
    double g0w = 0.0;        // single-photon electromechanical coupling
    double drive_amp_c = 0.0; // optical drive amplitude E_c
    double drive_amp_w = 0.0; // microwave drive amplitude E_w
    double gc = 0.0;         // many-photon optical coupling G_c
    double gw = 0.0;         // many-photon microwave coupling G_w
    double nbar_m = 0.0;     // mechanical bath occupancy
    double n_w = 0.0;        // microwave bath occupancy
    double n_c = 0.0;        // optical bath occupancy (numerically zero here)
    double gamma_m = 0.0;    // mechanical damping rate
};

// Bose-Einstein occupancy at angular frequency omega and temperature T.
// Returns exactly 0 for T <= 0 and clamps to 0 when the exponential underflows.
double thermal_occupancy(double omega, double temperature);

// Steady-state couplings and occupancies for the linearised model. The drive
// amplitudes use the standard input-output normalisation
// |E|^2 = 2 kappa P / (hbar omega_drive), and the many-photon couplings
// G = g0 sqrt(2) |alpha_s| use the intracavity amplitudes at the effective
// detunings stored in `p` (the cavity fields are eliminated at the drive
// frame working point).
DerivedParams derive_couplings(const PhysicalParams& p);

}  // namespace eomsim
