"""End-to-end smoke tests for the Python bindings."""

import math

import pytest

import eomsim


def test_defaults_and_derived_couplings():
    p = eomsim.PhysicalParams.defaults()
    assert p.omega_m == pytest.approx(2 * math.pi * 10e6, rel=1e-12)
    d = eomsim.derive_couplings(p)
    assert d.gc / p.omega_m == pytest.approx(0.090022344573877936, rel=1e-9)
    assert d.gw / p.omega_m == pytest.approx(0.1070077198718544643, rel=1e-9)
    assert d.nbar_m == pytest.approx(30.75759490480361521, rel=1e-9)


def test_model_is_stable_and_stationary():
    p = eomsim.PhysicalParams.defaults()
    model = eomsim.build_model(eomsim.derive_couplings(p), p)
    assert model.stable
    s = eomsim.is_stable(model.drift)
    assert s.stable
    assert s.max_real_eig == pytest.approx(-0.020001666664007976, rel=1e-6)

    v = eomsim.lyapunov_cm(model)
    assert v.shape == (6, 6)
    residual = model.drift @ v + v @ model.drift.T + model.diffusion
    assert abs(residual).max() <= 1e-9 * abs(model.diffusion).max()


def test_filtered_outputs_are_entangled():
    p = eomsim.PhysicalParams.defaults()
    model = eomsim.build_model(eomsim.derive_couplings(p), p)
    filters = eomsim.FilterSpec.from_normalized(20.0, -1.0, 1.0, p.omega_m)
    cm = eomsim.output_cm(model, filters)
    assert cm.quad_error <= 1e-7

    report = eomsim.teleportation_report(cm)
    assert report.e_n == pytest.approx(0.34420810734474738, abs=1e-5)
    assert 0.0 < report.fidelity_fock < 1.0
    assert 0.0 < report.fidelity_superposition < 1.0


def test_decoupled_output_is_vacuum():
    p = eomsim.PhysicalParams.defaults()
    p.power_c = 0.0
    p.power_w = 0.0
    model = eomsim.build_model(eomsim.derive_couplings(p), p)
    filters = eomsim.FilterSpec.from_normalized(5.0, -1.0, 1.0, p.omega_m)
    cm = eomsim.output_cm(model, filters)
    assert cm.B[0, 0] == pytest.approx(0.5, abs=1e-6)
    assert cm.B[1, 1] == pytest.approx(0.5, abs=1e-6)
    assert abs(cm.C).max() <= 1e-6


def test_fidelity_anchors_and_numeric_crosscheck():
    import numpy as np

    gamma = np.eye(2)
    assert eomsim.fidelity_fock1(gamma) == pytest.approx(1.0, abs=1e-10)
    assert eomsim.fidelity_superposition(gamma) == pytest.approx(1.0, abs=1e-10)
    assert eomsim.fidelity_fock1(2 * gamma) == pytest.approx(0.25, abs=1e-10)
    assert eomsim.fidelity_superposition(2 * gamma) == pytest.approx(0.4375, abs=1e-10)

    numeric = eomsim.fidelity_numeric(2 * gamma, eomsim.charfn_fock1)
    assert numeric == pytest.approx(0.25, abs=1e-7)


def test_config_round_trip():
    c = eomsim.SimConfig.defaults()
    c.set("epsilon", 20.0)
    assert c.get("epsilon") == pytest.approx(20.0, rel=1e-12)
    with pytest.raises(ValueError):
        c.set("bogus", 1.0)


def test_oracle_battery_passes():
    reports = eomsim.run_all_oracles(8, 5)
    assert len(reports) == 3
    assert all(r.passed for r in reports)
