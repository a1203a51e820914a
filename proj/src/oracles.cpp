#include "eomsim/oracles.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eomsim/constants.hpp"
#include "eomsim/metrics.hpp"
#include "eomsim/quadrature.hpp"

namespace eomsim {

using std::complex;
using namespace std::complex_literals;

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

StateSpaceModel random_stable_model(RandomStream& rng) {
    PhysicalParams p = PhysicalParams::defaults();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        p.delta_c = rng.uniform(-2.0, 2.0) * p.omega_m;
        p.delta_w = rng.uniform(-2.0, 2.0) * p.omega_m;
        const double gc = rng.uniform(0.0, 0.2) * p.omega_m;
        const double gw = rng.uniform(0.0, 0.2) * p.omega_m;
        DerivedParams d = derive_couplings(p);
        d.gc = gc;
        d.gw = gw;
        const StateSpaceModel m = build_model(d, p);
        if (m.stable) return m;
    }
    throw std::runtime_error("random_stable_model: rejection sampling failed");
}

FilterSpec random_filters(RandomStream& rng, double omega_m) {
    const double epsilon = std::exp(rng.uniform(std::log(0.5), std::log(50.0)));
    return FilterSpec::from_normalized(epsilon, rng.uniform(-2.0, 2.0),
                                       rng.uniform(-2.0, 2.0), omega_m);
}

OracleReport check_lyapunov_vs_spectrum(const StateSpaceModel& model, double tol) {
    OracleReport rep;
    rep.name = "lyapunov_vs_spectrum";

    const Matrix6d v_lyap = lyapunov_cm(model);

    const Matrix6cd D = model.diffusion.cast<complex<double>>();
    const Matrix6cd I6 = Matrix6cd::Identity();
    auto integrand = [&](double w) -> Matrix6cd {
        const Matrix6cd M =
            (1.0i * w * I6 + model.drift.cast<complex<double>>()).partialPivLu().inverse();
        return M * D * M.adjoint();
    };
    auto norm = [](const Matrix6cd& m) { return m.cwiseAbs().maxCoeff(); };

    const double window = 50.0;
    const double dc = model.drift(2, 3);
    const double dw = model.drift(4, 5);
    const double cap = std::min(-model.drift(2, 2), -model.drift(4, 4)) / 4.0;
    std::vector<double> seeds = {-window, 0.0, window};
    for (double c : {1.0, -1.0, dc, -dc, dw, -dw}) {
        for (double x : {c - cap, c, c + cap})
            if (x > -window && x < window) seeds.push_back(x);
    }
    // Exact pole positions: coupling shifts the closed-loop resonances off
    // the nominal frequencies, and a sub-linewidth peak between Kronrod nodes
    // is invisible to the error estimate until a split lands next to it.
    const Eigen::EigenSolver<Matrix6d> es(model.drift);
    for (int k = 0; k < 6; ++k) {
        const double pole = -es.eigenvalues()[k].imag();
        const double hw = std::max(std::abs(es.eigenvalues()[k].real()), 1e-12);
        for (double x : {pole - 4.0 * hw, pole, pole + 4.0 * hw})
            if (x > -window && x < window) seeds.push_back(x);
    }

    // Relative term: resolved-panel error estimates floor at roundoff
    // relative to the integral's own mass, which near-critical models make
    // large; see quad::integrate.
    const double rel_tol = 1e-11;
    const auto core = quad::integrate(integrand, seeds, 1e-9, 4000, norm, rel_tol);
    const auto hi = quad::integrate_tail<1>(integrand, window, 1e-10, 400, norm, rel_tol);
    const auto lo = quad::integrate_tail<-1>(integrand, window, 1e-10, 400, norm, rel_tol);
    if (!core.converged || !hi.converged || !lo.converged)
        throw std::runtime_error("check_lyapunov_vs_spectrum: quadrature did not converge");

    const Matrix6d v_spec =
        ((core.value + hi.value + lo.value) / (2.0 * constants::pi)).real();

    rep.max_abs_err = (v_spec - v_lyap).cwiseAbs().maxCoeff();
    rep.max_rel_err = rep.max_abs_err / v_lyap.cwiseAbs().maxCoeff();
    rep.passed = rep.max_rel_err <= tol;
    rep.budget = core.panels + hi.panels + lo.panels;
    return rep;
}

OracleReport check_decoupled_output(const FilterSpec& filters, const PhysicalParams& p,
                                    double occupancy_w, double tol) {
    OracleReport rep;
    rep.name = "decoupled_output";

    PhysicalParams p0 = p;
    p0.power_c = 0.0;
    p0.power_w = 0.0;
    DerivedParams d = derive_couplings(p0);
    d.n_w = occupancy_w;
    const StateSpaceModel model = build_model(d, p0);

    const CovarianceSet cm = output_cm(model, filters);

    // With the couplings off, the optical filtered mode is vacuum and the
    // microwave one is the filtered thermal input; both exactly, for any
    // filter, because the cavity is a passive single pole.
    const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
    double err = (cm.B - 0.5 * I2).cwiseAbs().maxCoeff();
    err = std::max(err, (cm.Bp - (occupancy_w + 0.5) * I2).cwiseAbs().maxCoeff());
    err = std::max(err, cm.C.cwiseAbs().maxCoeff());

    rep.max_abs_err = err;
    rep.max_rel_err = err / (occupancy_w + 0.5);
    rep.passed = rep.max_abs_err <= tol;
    rep.budget = 1;
    return rep;
}

namespace {

// Random physical two-mode covariance: thermal inputs, two-mode squeezing,
// independent local rotations. Physical by construction for any draw.
void random_physical_blocks(RandomStream& rng, Eigen::Matrix2d& B, Eigen::Matrix2d& Bp,
                            Eigen::Matrix2d& C) {
    const double r = rng.uniform(0.0, 1.5);
    const double n1 = rng.uniform(0.0, 3.0);
    const double n2 = rng.uniform(0.0, 3.0);
    const double th1 = rng.uniform(0.0, 2.0 * constants::pi);
    const double th2 = rng.uniform(0.0, 2.0 * constants::pi);

    const double ch = std::cosh(r), sh = std::sinh(r);
    Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
    S(0, 0) = S(1, 1) = S(2, 2) = S(3, 3) = ch;
    S(0, 2) = S(2, 0) = sh;
    S(1, 3) = S(3, 1) = -sh;

    Eigen::Vector4d diag;
    diag << n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5;
    Eigen::Matrix4d V = S * diag.asDiagonal() * S.transpose();

    auto rot = [](double th) {
        Eigen::Matrix2d R;
        R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        return R;
    };
    Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
    L.topLeftCorner<2, 2>() = rot(th1);
    L.bottomRightCorner<2, 2>() = rot(th2);
    V = (L * V * L.transpose()).eval();

    B = V.topLeftCorner<2, 2>();
    Bp = V.bottomRightCorner<2, 2>();
    C = V.topRightCorner<2, 2>();
}

}  // namespace

OracleReport check_fidelity_closed_forms(std::uint64_t seed, int n_samples, double tol) {
    OracleReport rep;
    rep.name = "fidelity_closed_forms";
    rep.budget = n_samples;

    double worst = 0.0;
    double worst_rel = 0.0;
    auto compare = [&](const Eigen::Matrix2d& G, double anchor_tol) {
        const double pairs[2][2] = {
            {fidelity_fock1(G), fidelity_numeric(G, charfn_fock1)},
            {fidelity_superposition(G), fidelity_numeric(G, charfn_superposition)},
        };
        double local = 0.0;
        for (const auto& p : pairs) {
            const double abs_err = std::abs(p[0] - p[1]);
            local = std::max(local, abs_err);
            worst = std::max(worst, abs_err);
            worst_rel = std::max(worst_rel, abs_err / std::max(p[0], 1e-30));
        }
        return local <= anchor_tol;
    };

    bool ok = true;
    // Fixed anchors: the identity kernel teleports perfectly, and both closed
    // forms have simple exact values at Gamma = 2I (1/4 and 7/16).
    ok = compare(Eigen::Matrix2d::Identity(), 1e-10) && ok;
    ok = compare(2.0 * Eigen::Matrix2d::Identity(), 1e-8) && ok;

    RandomStream rng(seed);
    Eigen::Matrix2d B, Bp, C;
    for (int i = 0; i < n_samples; ++i) {
        random_physical_blocks(rng, B, Bp, C);
        const Eigen::Matrix2d G = gamma_matrix(B, Bp, C);
        // Keep the kernels inside the numeric integrator's validity domain;
        // redraws stay deterministic because the stream only moves forward.
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
        if (es.eigenvalues().minCoeff() < 0.1 || es.eigenvalues().maxCoeff() > 1e3) {
            --i;
            continue;
        }
        ok = compare(G, tol) && ok;
    }

    rep.max_abs_err = worst;
    rep.max_rel_err = worst_rel;
    rep.passed = ok;
    return rep;
}

std::vector<OracleReport> run_all_oracles(int budget, std::uint64_t seed,
                                          std::optional<double> tol_override) {
    if (budget <= 0) throw std::invalid_argument("run_all_oracles: budget must be positive");

    const double tol_lyap = tol_override.value_or(1e-6);
    const double tol_dec = tol_override.value_or(1e-6);
    const double tol_fid = tol_override.value_or(1e-6);

    std::vector<OracleReport> reports;
    RandomStream rng(seed);

    // Reference working point plus random stable models.
    {
        const PhysicalParams p = PhysicalParams::defaults();
        OracleReport agg = check_lyapunov_vs_spectrum(build_model(derive_couplings(p), p), tol_lyap);
        const int n_models = std::max(1, budget / 4);
        for (int i = 0; i < n_models; ++i) {
            const OracleReport r = check_lyapunov_vs_spectrum(random_stable_model(rng), tol_lyap);
            agg.max_abs_err = std::max(agg.max_abs_err, r.max_abs_err);
            agg.max_rel_err = std::max(agg.max_rel_err, r.max_rel_err);
            agg.passed = agg.passed && r.passed;
            agg.budget += r.budget;
        }
        reports.push_back(agg);
    }

    {
        const PhysicalParams p = PhysicalParams::defaults();
        const int n_pairs = std::max(2, budget / 20);
        OracleReport agg;
        agg.name = "decoupled_output";
        agg.passed = true;
        for (int i = 0; i < n_pairs; ++i) {
            const FilterSpec f = random_filters(rng, p.omega_m);
            // Alternate between the cryogenic occupancy and a visibly thermal
            // one so both terms of the limit are exercised.
            const double occ = (i % 2 == 0) ? thermal_occupancy(p.omega_w, p.bath_temperature) : 0.5;
            const OracleReport r = check_decoupled_output(f, p, occ, tol_dec);
            agg.max_abs_err = std::max(agg.max_abs_err, r.max_abs_err);
            agg.max_rel_err = std::max(agg.max_rel_err, r.max_rel_err);
            agg.passed = agg.passed && r.passed;
            agg.budget += r.budget;
        }
        reports.push_back(agg);
    }

    reports.push_back(check_fidelity_closed_forms(seed, budget, tol_fid));
    return reports;
}

}  // namespace eomsim
