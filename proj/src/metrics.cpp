#include "eomsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "eomsim/constants.hpp"
#include "eomsim/quadrature.hpp"

namespace eomsim {

LogNegativity log_negativity(const Eigen::Matrix4d& v_reduced, const Eigen::Matrix2d& B,
                             const Eigen::Matrix2d& Bp, const Eigen::Matrix2d& C) {
    const double det_v = v_reduced.determinant();
    // Partial transposition flips the sign of det C, turning the symplectic
    // invariant det B + det Bp + 2 det C into the combination below.
    const double sigma = B.determinant() + Bp.determinant() - 2.0 * C.determinant();
    const double disc = sigma * sigma - 4.0 * det_v;
    if (disc < -1e-10)
        throw std::invalid_argument(
            "log_negativity: covariance matrix has no real partially-transposed "
            "symplectic spectrum");

    double inner = 0.5 * (sigma - std::sqrt(std::max(disc, 0.0)));
    if (inner < 0.0) {
        if (inner < -1e-12)
            throw std::invalid_argument("log_negativity: negative symplectic eigenvalue");
        inner = 0.0;
    }
    LogNegativity ln;
    ln.eta_minus = std::sqrt(inner);
    ln.e_n = std::max(0.0, -std::log(2.0 * ln.eta_minus));
    return ln;
}

Eigen::Matrix2d gamma_matrix(const Eigen::Matrix2d& B, const Eigen::Matrix2d& Bp,
                             const Eigen::Matrix2d& C) {
    Eigen::Matrix2d Z;
    Z << 1.0, 0.0, 0.0, -1.0;
    Eigen::Matrix2d G = Eigen::Matrix2d::Identity() + Z * B * Z + Z * C + C.transpose() * Z + Bp;

    const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
    if (std::abs(G(0, 1) - G(1, 0)) > 1e-12 * scale)
        throw std::invalid_argument("gamma_matrix: input blocks produce an asymmetric kernel");
    G = (0.5 * (G + G.transpose())).eval();

    if (!(G(0, 0) > 0.0) || !(G.determinant() > 0.0))
        throw std::invalid_argument("gamma_matrix: kernel is not positive definite");
    return G;
}

namespace {

double check_unit_interval(double f, const char* name) {
    if (f < -1e-9 || f > 1.0 + 1e-9)
        throw std::runtime_error(std::string(name) + ": fidelity outside [0, 1], kernel unphysical");
    return std::min(std::max(f, 0.0), 1.0);
}

double quartic_term(const Eigen::Matrix2d& g, double det) {
    const double t = g(0, 0) * g(0, 0) + g(1, 1) * g(1, 1) + 2.0 * g(0, 1) * g(0, 1);
    return 3.0 * t / (4.0 * det * det);
}

}  // namespace

double fidelity_fock1(const Eigen::Matrix2d& gamma) {
    const double det = gamma.determinant();
    if (!(det > 0.0)) throw std::invalid_argument("fidelity_fock1: kernel determinant not positive");
    const double f = (1.0 + (0.5 - (gamma(0, 0) + gamma(1, 1))) / det + quartic_term(gamma, det)) /
                     std::sqrt(det);
    return check_unit_interval(f, "fidelity_fock1");
}

double fidelity_superposition(const Eigen::Matrix2d& gamma) {
    const double det = gamma.determinant();
    if (!(det > 0.0))
        throw std::invalid_argument("fidelity_superposition: kernel determinant not positive");
    const double f =
        (4.0 + (0.5 - 2.0 * gamma(1, 1)) / det + quartic_term(gamma, det)) / (4.0 * std::sqrt(det));
    return check_unit_interval(f, "fidelity_superposition");
}

std::complex<double> charfn_vacuum(std::complex<double> eta) {
    return std::exp(-0.5 * std::norm(eta));
}

std::complex<double> charfn_fock1(std::complex<double> eta) {
    const double n = std::norm(eta);
    return (1.0 - n) * std::exp(-0.5 * n);
}

std::complex<double> charfn_superposition(std::complex<double> eta) {
    const double n = std::norm(eta);
    return 0.5 * (2.0 - n + 2.0 * eta.real()) * std::exp(-0.5 * n);
}

double fidelity_numeric(const Eigen::Matrix2d& gamma,
                        const std::function<std::complex<double>(std::complex<double>)>& input_charfn) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gamma);
    const double lam_min = es.eigenvalues().minCoeff();
    if (!(lam_min > 0.0))
        throw std::invalid_argument("fidelity_numeric: kernel is not positive definite");
    // Beyond |eta| = R the Gaussian factor is below 1e-16 of its peak, so the
    // truncated square loses nothing at the 1e-8 target. Kernels soft enough
    // to push R out of the representable range of exp(|eta|^2) are rejected.
    if (lam_min < 0.05)
        throw std::runtime_error("fidelity_numeric: kernel too soft for the truncation bound");
    const double radius = std::sqrt(37.0 / lam_min);

    const double g_rr = gamma(1, 1);  // multiplies eta_R^2 via mu = (eta_I, -eta_R)
    const double g_ii = gamma(0, 0);
    const double g_ri = -2.0 * gamma(0, 1);

    auto weight = [&input_charfn](double x, double y) {
        const std::complex<double> phi = input_charfn({x, y});
        return std::norm(phi) * std::exp(x * x + y * y);
    };

    auto scalar_norm = [](double v) { return std::abs(v); };
    auto inner = [&](double x) {
        auto f = [&](double y) {
            return weight(x, y) * std::exp(-(g_rr * x * x + g_ri * x * y + g_ii * y * y));
        };
        const auto r = quad::integrate(f, {-radius, 0.0, radius}, 1e-12, 256, scalar_norm);
        if (!r.converged)
            throw std::runtime_error("fidelity_numeric: inner quadrature did not converge");
        return r.value;
    };

    const auto outer = quad::integrate(inner, {-radius, 0.0, radius}, 1e-11, 256, scalar_norm);
    if (!outer.converged)
        throw std::runtime_error("fidelity_numeric: outer quadrature did not converge");

    return check_unit_interval(outer.value / constants::pi, "fidelity_numeric");
}

bool no_cloning_pass(double fidelity) { return fidelity > 2.0 / 3.0; }

TeleportationReport teleportation_report(const CovarianceSet& cm) {
    TeleportationReport r;
    const LogNegativity ln = log_negativity(cm.v_reduced, cm.B, cm.Bp, cm.C);
    r.e_n = ln.e_n;
    r.eta_minus = ln.eta_minus;
    r.gamma = gamma_matrix(cm.B, cm.Bp, cm.C);
    r.fidelity_fock = fidelity_fock1(r.gamma);
    r.fidelity_superposition = fidelity_superposition(r.gamma);
    r.beats_no_cloning_fock = no_cloning_pass(r.fidelity_fock);
    r.beats_no_cloning_superposition = no_cloning_pass(r.fidelity_superposition);
    return r;
}

}  // namespace eomsim
