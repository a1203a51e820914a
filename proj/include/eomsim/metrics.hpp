#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "eomsim/spectra.hpp"

namespace eomsim {

struct LogNegativity {
    double e_n = 0.0;        // entanglement, max(0, -ln(2 eta_minus))
    double eta_minus = 0.0;  // smaller symplectic eigenvalue of the PT state
};

// Logarithmic negativity of the two-mode Gaussian state with covariance
// v_reduced = [[B, C], [C^T, Bp]] (vacuum = 1/2 units). Throws
// std::invalid_argument if the partially transposed symplectic spectrum is
// not real, i.e. Sigma^2 - 4 det(v_reduced) < -1e-10.
LogNegativity log_negativity(const Eigen::Matrix4d& v_reduced, const Eigen::Matrix2d& B,
                             const Eigen::Matrix2d& Bp, const Eigen::Matrix2d& C);

// Output-state kernel of continuous-variable teleportation over the two-mode
// resource (B, Bp, C), with the optical mode measured jointly with the input
// and the microwave mode receiving the displacement:
//   Gamma = 2 * (1/2) I + Z B Z + Z C + C^T Z + Bp,   Z = diag(1, -1).
// The result is symmetrised; a relative asymmetry above 1e-12 or a
// non-positive-definite Gamma throws.
Eigen::Matrix2d gamma_matrix(const Eigen::Matrix2d& B, const Eigen::Matrix2d& Bp,
                             const Eigen::Matrix2d& C);

// Closed-form teleportation fidelity for the single-photon input |1>:
//   F = (1/sqrt(det G)) [ 1 + (1/det G)(1/2 - (G11 + G22))
//        + 3 (G11^2 + G22^2 + 2 G12^2) / (4 det G^2) ].
// Throws std::runtime_error if the evaluated fidelity leaves [0, 1] by more
// than 1e-9, which indicates an unphysical kernel rather than roundoff.
double fidelity_fock1(const Eigen::Matrix2d& gamma);

// Same for the balanced superposition (|0> + |1>)/sqrt(2):
//   F = (1/(4 sqrt(det G))) [ 4 + (1/det G)(1/2 - 2 G22)
//        + 3 (G11^2 + G22^2 + 2 G12^2) / (4 det G^2) ].
double fidelity_superposition(const Eigen::Matrix2d& gamma);

// Characteristic functions (symmetric ordering) of the reference inputs,
// eta = eta_R + i eta_I.
std::complex<double> charfn_vacuum(std::complex<double> eta);
std::complex<double> charfn_fock1(std::complex<double> eta);
std::complex<double> charfn_superposition(std::complex<double> eta);

// Direct numerical evaluation of the fidelity integral
//   F = (1/pi) Int d^2eta |phi_in(eta)|^2 exp(|eta|^2) exp(-mu^T Gamma mu),
// with mu = (eta_I, -eta_R). Serves as the independent cross-check of the
// closed forms: it never touches their algebra, only iterated 1D adaptive
// quadrature over a disc chosen so the discarded Gaussian mass is < 1e-16.
// Target absolute error 1e-8; throws on non-convergence or if the kernel is
// too close to singular for the truncation bound.
double fidelity_numeric(const Eigen::Matrix2d& gamma,
                        const std::function<std::complex<double>(std::complex<double>)>& input_charfn);

// Strict no-cloning comparison, F > 2/3. Exactly 2/3 does not pass.
bool no_cloning_pass(double fidelity);

// Everything downstream of a covariance set at one operating point.
struct TeleportationReport {
    double e_n = 0.0;
    double eta_minus = 0.0;
    Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();
    double fidelity_fock = 0.0;
    double fidelity_superposition = 0.0;
    bool beats_no_cloning_fock = false;
    bool beats_no_cloning_superposition = false;
};

TeleportationReport teleportation_report(const CovarianceSet& cm);

}  // namespace eomsim
