import numpy as np
import pytest

from kawahara.soliton import (AMPLITUDE, SPEED, SolitonGateError, crest_position, require_gate,
                              soliton_profile, soliton_residual_check, soliton_transport)
from kawahara.spectral import grid, project


def test_residual_gate():
    assert soliton_residual_check() <= 1e-8


def test_gate_refuses_when_threshold_not_met():
    with pytest.raises(SolitonGateError, match="disabled"):
        require_gate(n_modes=64, threshold=1e-30)


def test_wrong_speed_fails_residual():
    # the gate is a real check: a profile moving at the wrong speed has a large residual
    import kawahara.soliton as sol
    good = soliton_residual_check(n_modes=256)
    saved = sol.SPEED
    try:
        sol.SPEED = saved * 1.01
        bad = soliton_residual_check(n_modes=256)
    finally:
        sol.SPEED = saved
    assert bad > 1e3 * good


def test_crest_amplitude():
    v = soliton_profile(n_points=4096).values
    assert np.max(v) == pytest.approx(105 / 169, rel=1e-12)
    assert AMPLITUDE == pytest.approx(0.6213, abs=1e-4)


def test_translation_consistency():
    a = soliton_profile(x0=0.0, t=0.0).values
    b = soliton_profile(x0=-1.0, t=169 / 36).values
    assert np.max(np.abs(a - b)) <= 1e-14


def test_amplitude_scale_multiplies():
    a = soliton_profile(1.0).values
    assert np.allclose(soliton_profile(0.5).values, 0.5 * a, rtol=0, atol=1e-16)


def test_small_domain_rejected():
    with pytest.raises(ValueError, match="domain_scale"):
        soliton_profile(domain_scale=5.0)


def test_crest_position_off_grid():
    u = project(soliton_profile(x0=0.3, n_points=2048), 256)
    assert crest_position(u) == pytest.approx(0.3, abs=1e-9)


def test_short_transport():
    rep = soliton_transport(n_modes=256, dt=1e-3, t_final=0.2, record_every=50)
    assert rep.max_l2_error <= 1e-3
    assert rep.speed_error <= 0.02
    assert np.allclose(np.diff(rep.times), 0.05)
    assert rep.crest_positions[0] == pytest.approx(0.0, abs=1e-9)
    assert SPEED == 36 / 169
