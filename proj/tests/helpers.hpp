#pragma once

#include <cmath>
#include <eomsim/dynamics.hpp>
#include <eomsim/params.hpp>

namespace testutil {

// Relative agreement against a reference value; safe for references far from zero.
inline bool rel_eq(double actual, double expected, double rel_tol) {
    return std::abs(actual - expected) <= rel_tol * std::abs(expected);
}

// Builds a model at the default working point but with detunings and couplings
// dialed in directly in units of omega_m. Occupancies can be overridden to probe
// thermal behavior without touching the temperature bookkeeping.
inline eomsim::StateSpaceModel
make_model(double delta_c_norm, double delta_w_norm, double gc_norm, double gw_norm,
           double n_w_override = -1.0, double nbar_override = -1.0) {
    auto p = eomsim::PhysicalParams::defaults();
    p.delta_c = delta_c_norm * p.omega_m;
    p.delta_w = delta_w_norm * p.omega_m;
    p.omega_w = p.drive_omega_w + p.delta_w;
    auto d = eomsim::derive_couplings(p);
    d.gc = gc_norm * p.omega_m;
    d.gw = gw_norm * p.omega_m;
    if (n_w_override >= 0.0) d.n_w = n_w_override;
    if (nbar_override >= 0.0) d.nbar_m = nbar_override;
    return eomsim::build_model(d, p);
}

}  // namespace testutil
