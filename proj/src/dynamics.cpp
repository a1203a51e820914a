#include "eomsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace eomsim {

namespace {
constexpr double kStabilityMargin = 1e-12;
}

FixedPoint fixed_point(const PhysicalParams& p, const DerivedParams& d,
                       DetuningConvention mode) {
    p.validate();
    FixedPoint fp;

    if (mode == DetuningConvention::GivenEffective) {
        fp.delta_c_eff = p.delta_c;
        fp.delta_w_eff = p.delta_w;
        fp.alpha_s = d.drive_amp_c / std::hypot(p.kappa_c, p.delta_c);
        fp.beta_s = d.drive_amp_w / std::hypot(p.kappa_w, p.delta_w);
        fp.q_s = (d.g0c * fp.alpha_s * fp.alpha_s + d.g0w * fp.beta_s * fp.beta_s) / p.omega_m;
        return fp;
    }

    // Bare detunings: the static radiation-pressure shift moves both cavities
    // by g0 * q_s, and q_s in turn depends on the intracavity photon numbers.
    // Damped fixed-point iteration; the map is a strong contraction everywhere
    // in the parameter domain of interest.
    const int max_iter = 10000;
    double q = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double dc = p.delta_c - d.g0c * q;
        const double dw = p.delta_w - d.g0w * q;
        const double alpha = d.drive_amp_c / std::hypot(p.kappa_c, dc);
        const double beta = d.drive_amp_w / std::hypot(p.kappa_w, dw);
        const double q_next = (d.g0c * alpha * alpha + d.g0w * beta * beta) / p.omega_m;
        const double q_damped = q + 0.7 * (q_next - q);
        const bool done = std::abs(q_damped - q) <= 1e-12 * std::max(1.0, std::abs(q_damped));
        q = q_damped;
        if (done) {
            fp.q_s = q;
            fp.delta_c_eff = p.delta_c - d.g0c * q;
            fp.delta_w_eff = p.delta_w - d.g0w * q;
            fp.alpha_s = d.drive_amp_c / std::hypot(p.kappa_c, fp.delta_c_eff);
            fp.beta_s = d.drive_amp_w / std::hypot(p.kappa_w, fp.delta_w_eff);
            return fp;
        }
    }
    throw std::runtime_error("fixed_point: bare-detuning iteration did not converge");
}

Stability is_stable(const Matrix6d& drift) {
    Eigen::EigenSolver<Matrix6d> es(drift, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("is_stable: eigenvalue computation failed");
    double max_re = es.eigenvalues()(0).real();
    for (int i = 1; i < 6; ++i) max_re = std::max(max_re, es.eigenvalues()(i).real());
    return {max_re < -kStabilityMargin, max_re};
}

StateSpaceModel build_model(const DerivedParams& d, const PhysicalParams& p) {
    p.validate();

    StateSpaceModel m;
    m.omega_m = p.omega_m;

    // Everything in units of omega_m.
    const double gm = d.gamma_m / p.omega_m;
    const double kc = p.kappa_c / p.omega_m;
    const double kw = p.kappa_w / p.omega_m;
    const double dc = p.delta_c / p.omega_m;
    const double dw = p.delta_w / p.omega_m;
    const double gc = d.gc / p.omega_m;
    const double gw = d.gw / p.omega_m;

    Matrix6d& A = m.drift;
    A(0, 1) = 1.0;
    A(1, 0) = -1.0;
    A(1, 1) = -gm;
    A(1, 2) = gc;
    A(1, 4) = gw;
    A(2, 2) = -kc;
    A(2, 3) = dc;
    A(3, 0) = gc;
    A(3, 2) = -dc;
    A(3, 3) = -kc;
    A(4, 4) = -kw;
    A(4, 5) = dw;
    A(5, 0) = gw;
    A(5, 4) = -dw;
    A(5, 5) = -kw;

    m.diffusion(1, 1) = gm * (2.0 * d.nbar_m + 1.0);
    m.diffusion(2, 2) = kc * (2.0 * d.n_c + 1.0);
    m.diffusion(3, 3) = kc * (2.0 * d.n_c + 1.0);
    m.diffusion(4, 4) = kw * (2.0 * d.n_w + 1.0);
    m.diffusion(5, 5) = kw * (2.0 * d.n_w + 1.0);

    const Stability s = is_stable(A);
    m.stable = s.stable;
    m.max_real_eig = s.max_real_eig * p.omega_m;
    return m;
}

Matrix6d lyapunov_cm(const StateSpaceModel& model) {
    if (!model.stable)
        throw std::runtime_error(
            "lyapunov_cm: drift matrix is not strictly stable, no stationary covariance exists");

    const Matrix6d& A = model.drift;
    const Matrix6d& D = model.diffusion;

    // A V + V A^T = -D for symmetric V: 21 unknowns, one equation per
    // independent (i, j). Direct dense solve; the system is tiny and this
    // avoids any iteration or Schur machinery.
    int idx[6][6];
    int k = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            idx[i][j] = k;
            idx[j][i] = k;
            ++k;
        }

    Eigen::Matrix<double, 21, 21> M = Eigen::Matrix<double, 21, 21>::Zero();
    Eigen::Matrix<double, 21, 1> rhs;
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            const int r = idx[i][j];
            for (int l = 0; l < 6; ++l) {
                M(r, idx[l][j]) += A(i, l);
                M(r, idx[i][l]) += A(j, l);
            }
            rhs(r) = -D(i, j);
        }
    }

    const Eigen::Matrix<double, 21, 1> v = M.partialPivLu().solve(rhs);

    Matrix6d V;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) V(i, j) = v(idx[i][j]);

    const double scale = D.cwiseAbs().maxCoeff();
    const double residual = (A * V + V * A.transpose() + D).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * std::max(scale, 1e-300))
        throw std::runtime_error("lyapunov_cm: residual exceeds tolerance");
    return V;
}

}  // namespace eomsim
