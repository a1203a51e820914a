#pragma once

#include <Eigen/Dense>

#include "eomsim/params.hpp"

namespace eomsim {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

// Semiclassical working point of the driven system.
//
// Amplitudes are phase-referenced so that alpha_s and beta_s are real and
// non-negative; q_s is the static mechanical shift in zero-point units.
struct FixedPoint {
    double q_s = 0.0;
    double alpha_s = 0.0;       // optical amplitude
    double beta_s = 0.0;        // microwave amplitude
    double delta_c_eff = 0.0;   // effective optical detuning, rad/s
    double delta_w_eff = 0.0;   // effective microwave detuning, rad/s
};

enum class DetuningConvention {
    GivenEffective,  // p.delta_* already include the static mechanical shift
    GivenBare,       // p.delta_* are bare cavity-drive detunings; solve self-consistently
};

FixedPoint fixed_point(const PhysicalParams& p, const DerivedParams& d,
                       DetuningConvention mode = DetuningConvention::GivenEffective);

// Linearised quantum Langevin model for the fluctuations around the working
// point, in the quadrature basis
//
//   u = (dq, dp, dXc, dYc, dXw, dYw)
//
// with du/dt = A u + n(t). Both matrices are stored in units of omega_m
// (time measured in 1/omega_m), which keeps the numerics well scaled;
// `omega_m` records the scale for conversion back to SI.
//
// The diffusion matrix D is defined by <n_i(t) n_j(t') + n_j(t') n_i(t)>/2
// = D_ij delta(t - t'), with vacuum quadrature variance 1/2:
// D = diag(0, gamma_m (2 nbar + 1), kappa_c (2 n_c + 1) I2, kappa_w (2 n_w + 1) I2).
struct StateSpaceModel {
    Matrix6d drift = Matrix6d::Zero();      // A, normalised by omega_m
    Matrix6d diffusion = Matrix6d::Zero();  // D, normalised by omega_m, diagonal
    double omega_m = 0.0;                   // rad/s, normalisation scale
    bool stable = false;
    double max_real_eig = 0.0;              // rad/s
};

struct Stability {
    bool stable = false;
    double max_real_eig = 0.0;  // same units as the matrix handed in
};

// Routh-Hurwitz style check via the full eigenvalue spectrum. A system is
// declared stable when every eigenvalue satisfies Re(lambda) < -1e-12 in the
// units of `drift`.
Stability is_stable(const Matrix6d& drift);

// Assembles the drift and diffusion matrices at the working point implied by
// `p` (effective-detuning convention). Throws if validation of the inputs fails.
StateSpaceModel build_model(const DerivedParams& d, const PhysicalParams& p);

// Stationary covariance matrix from the Lyapunov equation A V + V A^T = -D,
// solved directly for the 21 independent entries of the symmetric V.
// Throws std::runtime_error if the model is unstable or the residual exceeds
// 1e-10 * max|D|. The result is in the same normalised units as the model.
Matrix6d lyapunov_cm(const StateSpaceModel& model);

}  // namespace eomsim
