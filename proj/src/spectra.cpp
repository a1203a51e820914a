#include "eomsim/spectra.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eomsim/constants.hpp"
#include "eomsim/quadrature.hpp"

namespace eomsim {

using std::complex;
using namespace std::complex_literals;

FilterSpec FilterSpec::from_normalized(double epsilon, double omega_c_norm,
                                       double omega_w_norm, double omega_m) {
    if (!(omega_m > 0.0)) throw std::invalid_argument("FilterSpec: omega_m must be positive");
    FilterSpec f;
    f.tau_c = epsilon / omega_m;
    f.tau_w = epsilon / omega_m;
    f.omega_center_c = omega_c_norm * omega_m;
    f.omega_center_w = omega_w_norm * omega_m;
    f.validate();
    return f;
}

void FilterSpec::validate() const {
    if (!(tau_c > 0.0) || !std::isfinite(tau_c))
        throw std::invalid_argument("FilterSpec.tau_c must be positive");
    if (!(tau_w > 0.0) || !std::isfinite(tau_w))
        throw std::invalid_argument("FilterSpec.tau_w must be positive");
    if (!std::isfinite(omega_center_c) || !std::isfinite(omega_center_w))
        throw std::invalid_argument("FilterSpec centre frequencies must be finite");
}

complex<double> filter_ft(double tau, double omega_center, double omega) {
    return std::sqrt(2.0 / tau) / complex<double>(1.0 / tau, omega_center - omega);
}

namespace {

// 2x2 quadrature-basis block for one cavity's filtered output at (normalised)
// frequency omega. R couples like to like, I mixes X and Y.
struct FilterBlock {
    complex<double> R, I;
};

FilterBlock filter_block(double kappa, double tau, double omega_center, double omega) {
    const complex<double> gp = filter_ft(tau, omega_center, omega);
    const complex<double> gm = std::conj(filter_ft(tau, omega_center, -omega));
    const double s = std::sqrt(kappa / 2.0);
    return {s * (gp + gm), -1.0i * s * (gp - gm)};
}

}  // namespace

Matrix6cd transfer_ft(double omega, const FilterSpec& filters, double kappa_c,
                      double kappa_w, double omega_m) {
    filters.validate();
    Matrix6cd T = Matrix6cd::Zero();
    T(0, 0) = 1.0;
    T(1, 1) = 1.0;

    const FilterBlock fc = filter_block(kappa_c, filters.tau_c * omega_m,
                                        filters.omega_center_c / omega_m, omega);
    T(2, 2) = fc.R;
    T(2, 3) = -fc.I;
    T(3, 2) = fc.I;
    T(3, 3) = fc.R;

    const FilterBlock fw = filter_block(kappa_w, filters.tau_w * omega_m,
                                        filters.omega_center_w / omega_m, omega);
    T(4, 4) = fw.R;
    T(4, 5) = -fw.I;
    T(5, 4) = fw.I;
    T(5, 5) = fw.R;
    return T;
}

void reduce(const Matrix6d& v_out, Eigen::Matrix4d& v_reduced, Eigen::Matrix2d& B,
            Eigen::Matrix2d& Bp, Eigen::Matrix2d& C) {
    v_reduced = v_out.bottomRightCorner<4, 4>();
    B = v_reduced.topLeftCorner<2, 2>();
    Bp = v_reduced.bottomRightCorner<2, 2>();
    C = v_reduced.topRightCorner<2, 2>();
}

CovarianceSet output_cm(const StateSpaceModel& model, const FilterSpec& filters) {
    if (!model.stable)
        throw std::runtime_error("output_cm: model is not stable, stationary spectra undefined");
    filters.validate();

    const Matrix6d& A = model.drift;
    const double kc = -A(2, 2);
    const double kw = -A(4, 4);
    const double dc = A(2, 3);
    const double dw = A(4, 5);
    const double oc = filters.omega_center_c / model.omega_m;
    const double ow = filters.omega_center_w / model.omega_m;
    const double tc = filters.tau_c * model.omega_m;
    const double tw = filters.tau_w * model.omega_m;

    Eigen::Matrix<double, 6, 1> p_out;
    p_out << 0.0, 0.0, 1.0 / (2.0 * kc), 1.0 / (2.0 * kc), 1.0 / (2.0 * kw), 1.0 / (2.0 * kw);
    const Matrix6cd P = p_out.asDiagonal().toDenseMatrix().cast<complex<double>>();
    const Matrix6cd D = model.diffusion.cast<complex<double>>();
    const Matrix6cd I6 = Matrix6cd::Identity();

    auto integrand = [&](double w) -> Matrix6cd {
        const Matrix6cd M = (1.0i * w * I6 + A.cast<complex<double>>()).partialPivLu().inverse();
        const Matrix6cd G = transfer_ft(w, filters, kc, kw, model.omega_m) * (M + P);
        return G * D * G.adjoint();
    };
    auto norm = [](const Matrix6cd& m) { return m.cwiseAbs().maxCoeff(); };

    // Panel seeds: every place the integrand is sharp. The mechanical
    // resonance sits at +-1, the cavity responses near the detunings, and the
    // filters near their centres; each gets a forced split at the scale of the
    // narrowest linewidth so adaptive refinement starts from panels that
    // already resolve the peaks. Coupling shifts the closed-loop resonances
    // away from those nominal positions, so the exact pole locations (the
    // imaginary parts of the drift eigenvalues, bracketed by a few linewidths)
    // are seeded as well; a sub-linewidth needle between two Kronrod nodes
    // would otherwise be invisible to the panel error estimate.
    const double window = 50.0;
    const double cap = std::min(std::min(1.0 / tc, 1.0 / tw), std::min(kc, kw)) / 4.0;
    std::vector<double> seeds = {-window, 0.0, window};
    const double centers[] = {1.0, -1.0, dc, -dc, dw, -dw, oc, -oc, ow, -ow};
    for (double c : centers) {
        for (double x : {c - cap, c, c + cap})
            if (x > -window && x < window) seeds.push_back(x);
    }
    const Eigen::EigenSolver<Matrix6d> poles(A);
    for (int k = 0; k < 6; ++k) {
        const double pole = -poles.eigenvalues()[k].imag();
        const double hw = std::max(std::abs(poles.eigenvalues()[k].real()), 1e-12);
        for (double x : {pole - 4.0 * hw, pole, pole + 4.0 * hw})
            if (x > -window && x < window) seeds.push_back(x);
    }

    // Absolute target plus a relative term: the Kronrod-Gauss discrepancy of
    // a resolved panel floors at roundoff relative to the integrand's mass
    // (the mechanical needle alone carries nbar + 1/2), so a purely absolute
    // target is unreachable for hot or near-critical models.
    const double tol_core = 1e-9;
    const double tol_tail = 1e-10;
    const double rel_tol = 1e-11;
    const auto core = quad::integrate(integrand, seeds, tol_core, 4000, norm, rel_tol);
    const auto tail_hi = quad::integrate_tail<1>(integrand, window, tol_tail, 400, norm, rel_tol);
    const auto tail_lo = quad::integrate_tail<-1>(integrand, window, tol_tail, 400, norm, rel_tol);

    CovarianceSet cm;
    cm.quad_error = (core.error + tail_hi.error + tail_lo.error) / (2.0 * constants::pi);
    if (!core.converged || !tail_hi.converged || !tail_lo.converged || cm.quad_error > 1e-7)
        throw std::runtime_error("output_cm: spectral integration did not converge");

    const Matrix6cd Vc = (core.value + tail_hi.value + tail_lo.value) / (2.0 * constants::pi);

    const double scale = Vc.cwiseAbs().maxCoeff();
    const double im_residue = Vc.imag().cwiseAbs().maxCoeff();
    if (im_residue > 1e-9 * std::max(1.0, scale))
        throw std::runtime_error("output_cm: imaginary residue above tolerance");

    Matrix6d V = Vc.real();
    const double asym = (V - V.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * std::max(1.0, scale))
        throw std::runtime_error("output_cm: asymmetry above tolerance");
    V = 0.5 * (V + V.transpose()).eval();

    cm.v_out = V;
    reduce(V, cm.v_reduced, cm.B, cm.Bp, cm.C);

    // Physicality of the reduced state: V' + (i/2) J >= 0 and unit-limited
    // diagonal variances. Violations here mean the integration went wrong,
    // not that the state is exotic.
    Eigen::Matrix4cd heis = cm.v_reduced.cast<complex<double>>();
    const complex<double> half_i = 0.5i;
    heis(0, 1) += half_i;
    heis(1, 0) -= half_i;
    heis(2, 3) += half_i;
    heis(3, 2) -= half_i;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(heis);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("output_cm: physicality eigensolve failed");
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::runtime_error("output_cm: reduced state violates the uncertainty bound");
    for (int i = 0; i < 4; ++i)
        if (cm.v_reduced(i, i) < 0.5 - 1e-8)
            throw std::runtime_error("output_cm: filtered variance below the vacuum limit");

    return cm;
}

}  // namespace eomsim
