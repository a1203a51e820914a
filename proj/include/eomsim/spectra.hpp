#pragma once

#include <complex>

#include <Eigen/Dense>

#include "eomsim/dynamics.hpp"

namespace eomsim {

// Causal single-pole temporal mode applied to each output field,
// g(t) = sqrt(2/tau) exp(-(1/tau + i Omega) t) for t >= 0. The centre
// frequencies are measured in the respective rotating frames, and
// epsilon = tau * omega_m is the dimensionless bandwidth parameter: large
// epsilon means a filter much narrower than the mechanical sideband spacing.
struct FilterSpec {
    double tau_c = 0.0;           // s
    double tau_w = 0.0;           // s
    double omega_center_c = 0.0;  // rad/s
    double omega_center_w = 0.0;  // rad/s

    // Convenience constructor in mechanical units: equal bandwidths
    // tau = epsilon / omega_m and centres at omega_*_norm * omega_m.
    static FilterSpec from_normalized(double epsilon, double omega_c_norm,
                                      double omega_w_norm, double omega_m);

    double epsilon_c(double omega_m) const { return tau_c * omega_m; }
    double epsilon_w(double omega_m) const { return tau_w * omega_m; }

    void validate() const;
};

// Fourier transform of the filter envelope under f~(omega) = integral of
// f(t) exp(+i omega t) dt:
//   g~(omega) = sqrt(2/tau) / (1/tau + i (omega_center - omega)).
// Any consistent unit system works; internally the code calls this with
// omega_m-normalised arguments.
std::complex<double> filter_ft(double tau, double omega_center, double omega);

// 6x6 frequency-domain matrix mapping stationary output-field quadratures to
// the filtered mode quadratures. The mechanical block is the identity; each
// cavity block is sqrt(kappa/2) [[R, -I], [I, R]] built from the filter
// transform above. Arguments are omega_m-normalised (kappas too).
Matrix6cd transfer_ft(double omega, const FilterSpec& filters, double kappa_c,
                      double kappa_w, double omega_m);

// Stationary covariance matrix of (mechanics, filtered optical output mode,
// filtered microwave output mode), plus the 4x4 optical/microwave submatrix
// and its blocks. All variances use the vacuum = 1/2 convention.
struct CovarianceSet {
    Matrix6d v_out = Matrix6d::Zero();      // full 6x6
    Eigen::Matrix4d v_reduced = Eigen::Matrix4d::Zero();  // filtered cavity outputs
    Eigen::Matrix2d B = Eigen::Matrix2d::Zero();   // optical block
    Eigen::Matrix2d Bp = Eigen::Matrix2d::Zero();  // microwave block
    Eigen::Matrix2d C = Eigen::Matrix2d::Zero();   // optical-microwave correlations
    double quad_error = 0.0;                // achieved integration error estimate
};

// Evaluates the spectral integral
//   V = (1/2pi) Int T~(omega) (M~(omega) + P_out) D (M~(omega) + P_out)^dag T~(omega)^dag domega
// with M~(omega) = (i omega I + A)^(-1) and P_out the output-coupling diagonal
// diag(0, 0, 1/(2 kappa_c) I2, 1/(2 kappa_w) I2). The integrand follows from
// the input-output relation a_out = sqrt(2 kappa) a - a_in applied to the
// stationary solution of the Langevin equations.
//
// The integral runs over the whole real line: an adaptive core on
// [-50, 50] (mechanical units) with panel seeds at every sideband and filter
// centre, plus mapped tails. Throws std::runtime_error on an unstable model
// or when the error estimate cannot be brought under 1e-7.
CovarianceSet output_cm(const StateSpaceModel& model, const FilterSpec& filters);

// Splits the lower-right 4x4 of v_out into (v_reduced, B, Bp, C).
void reduce(const Matrix6d& v_out, Eigen::Matrix4d& v_reduced, Eigen::Matrix2d& B,
            Eigen::Matrix2d& Bp, Eigen::Matrix2d& C);

}  // namespace eomsim
