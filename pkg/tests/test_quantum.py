import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matterwave.grid import Grid
from matterwave.quantum import (
    SchrodingerSetup, constant_potential, harmonic_potential, kinetic_operator_check, moving_frame_potential,
    schrodinger_residual, step_potential, uncertainty_product,
)
from matterwave.units import M_ELECTRON, codata_units
from matterwave.waves import make_wave

U = codata_units()
W = make_wave(M_ELECTRON, 1e6)


def test_kinetic_operator_converges():
    r = kinetic_operator_check(W)
    assert r.relative < 1e-3
    assert 1.7 <= r.order_estimate <= 2.3
    assert kinetic_operator_check(W, order=4).order_estimate == pytest.approx(4, abs=0.3)


def test_kinetic_eigenvalue_matches_half_hbar_omega():
    d = kinetic_operator_check(W, ladder=None).details
    assert abs(d["eigenvalue"] / d["half_hbar_omega"] - 1) < 1e-12
    # discrete Rayleigh quotient: (2 - 2 cos(k dx)) / dx^2 in place of k^2
    g = Grid.for_wave(W, 256)
    dx = g.dx[0]
    k = W.wavenumber
    discrete = U.hbar**2 / (2 * W.m) * (2 - 2 * math.cos(k * dx)) / dx**2
    assert d["eigenvalue_discrete"] == pytest.approx(discrete, rel=1e-9)


@pytest.mark.parametrize("v0", [0.0, 1e-19, -3e-19])
def test_schrodinger_constant_potential(v0):
    g = Grid.for_wave(W, 256)
    psi = W.psi(g.points())
    s = SchrodingerSetup(W.m, constant_potential(v0), 0.5 * W.m * W.speed**2 + v0)
    r = schrodinger_residual(s, psi, g)
    r_fine = schrodinger_residual(s, W.psi(Grid.for_wave(W, 512).points()), Grid.for_wave(W, 512))
    assert r.l2 / r.scale < 1e-3
    assert r.l2 / r_fine.l2 == pytest.approx(4.0, rel=0.05)


def test_schrodinger_wrong_energy_fails():
    g = Grid.for_wave(W, 256)
    s = SchrodingerSetup(W.m, constant_potential(0.0), W.m * W.speed**2)
    r = schrodinger_residual(s, W.psi(g.points()), g)
    assert r.relative == pytest.approx(0.5, rel=1e-3)


def test_schrodinger_step_potential_with_mask():
    g = Grid.for_wave(W, 256, wavelengths=4)
    x = g.points()[..., 0]
    x0 = 2 * W.wavelength
    v0 = 1e-19
    # same-speed wave on both sides: the energy balance only holds where V = 0
    s = SchrodingerSetup(W.m, step_potential(v0, x0), 0.5 * W.m * W.speed**2)
    psi = W.psi(g.points())
    full = schrodinger_residual(s, psi, g)
    left = schrodinger_residual(s, psi, g, mask=x < x0)
    assert full.relative > 0.1
    assert left.relative < 1e-2


def test_potential_library():
    x = np.array([-1.0, 0.0, 2.0])
    assert np.array_equal(constant_potential(3.0)(x), [3.0, 3.0, 3.0])
    assert np.array_equal(step_potential(2.0, 0.0)(x), [0.0, 2.0, 2.0])
    assert np.array_equal(harmonic_potential(2.0, 1.0)(x), [4.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        SchrodingerSetup(0.0, constant_potential(0.0), 1.0)


@settings(max_examples=30)
@given(st.floats(-1e3, 1e3), st.floats(-10, 10), st.floats(-1e-3, 1e-3))
def test_moving_frame_potential(u, x, t):
    s = SchrodingerSetup(1.0, harmonic_potential(1.0), 0.0, frame_velocity=u)
    assert moving_frame_potential(s, 0.0)(x) == s.V(x)
    assert moving_frame_potential(s, t)(x) == pytest.approx(s.V(x + u * t), rel=1e-12, abs=1e-300)


def test_uncertainty_electron():
    r = uncertainty_product(W)
    assert r.product_kx == pytest.approx(math.pi, rel=1e-12)
    assert r.corrected == pytest.approx(U.hbar / 2, rel=1e-12)
    assert r.product_px == pytest.approx(U.hbar * r.product_kx, rel=1e-15)
    assert r.delta_k == pytest.approx(r.k, rel=1e-12)
    assert r.relation == ">="
    assert set(r.to_dict()) >= {"k", "delta_k", "delta_x", "product_kx", "product_px", "corrected"}


@given(st.floats(1e-31, 1e-25), st.floats(1.0, 1e8), st.floats(1e-12, 1e3))
def test_uncertainty_is_scale_free(m, s, vol):
    r = uncertainty_product(make_wave(m, s, volume=vol))
    assert abs(r.product_kx / math.pi - 1) < 1e-12
    assert r.delta_k > 0 and r.delta_x > 0
