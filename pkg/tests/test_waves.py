import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from matterwave.units import M_ELECTRON, codata_units
from matterwave.waves import (
    density_at, energy_split, intrinsic_potential_at, make_photon_wave, make_wave, wave_from_json, wave_to_json,
)

U = codata_units()

masses = st.floats(1e-31, 1e-25)
speeds = st.floats(1.0, 1e8)
directions = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(
    lambda v: np.linalg.norm(v) > 1e-3)


def _wave(m, s, d):
    d = np.asarray(d) / np.linalg.norm(d)
    return make_wave(m, s * d)


def test_electron_wave_numbers():
    w = make_wave(M_ELECTRON, 1e6)
    assert w.wavenumber == pytest.approx(8.637e9, rel=1e-3)
    assert w.omega == pytest.approx(8.637e15, rel=1e-3)
    # de Broglie cross-check: lambda = h / (m u)
    assert w.wavelength == pytest.approx(U.h / (M_ELECTRON * 1e6), rel=1e-12)
    assert w.wavelength == pytest.approx(7.27e-10, rel=1e-3)


@given(masses, speeds, directions)
def test_dispersion_identity(m, s, d):
    w = _wave(m, s, d)
    assert abs(w.omega / w.wavenumber / w.speed - 1) < 1e-12
    assert abs(w.wavelength * w.frequency / w.speed - 1) < 1e-12
    assert abs(U.hbar * w.omega / (m * w.speed**2) - 1) < 1e-12
    # k parallel to u
    assert np.linalg.norm(np.cross(w.k, w.u)) <= 1e-12 * w.wavenumber * w.speed


@given(masses, speeds, st.floats(-1e3, 1e3), st.floats(-1e-3, 1e-3))
def test_density_bounds_and_complementarity(m, s, x, t):
    w = make_wave(m, s)
    pos = np.array([x * w.wavelength, 0.0, 0.0])
    rho = density_at(w, pos, t)
    assert -1e-15 * w.rho0 <= rho <= w.rho0 * (1 + 1e-15)
    phi = intrinsic_potential_at(w, pos, t)
    assert abs(rho * w.speed**2 + phi - w.phi0) <= 1e-12 * w.phi0


def test_density_and_potential_at_phase_points():
    w = make_wave(M_ELECTRON, 1e6)
    quarter = np.array([w.wavelength / 4, 0.0, 0.0])
    assert density_at(w, np.zeros(3)) == 0.0
    assert density_at(w, quarter) == pytest.approx(w.rho0, rel=1e-15)
    assert intrinsic_potential_at(w, quarter) == pytest.approx(0.0, abs=1e-15 * w.phi0)
    assert intrinsic_potential_at(w, np.zeros(3)) == w.rho0 * w.speed**2


def test_mean_density_by_quadrature():
    w = make_wave(M_ELECTRON, 1e6)
    lam = w.wavelength
    for count in (1, 3):
        val, _ = quad(lambda x: density_at(w, [x, 0.0, 0.0]), 0.0, count * lam, limit=200)
        assert val / (count * lam) == pytest.approx(w.rho0 / 2, rel=1e-10)


def test_total_energy_by_quadrature():
    w = make_wave(M_ELECTRON, 1e6)
    # default particle volume: one wavelength times unit cross-section
    val, _ = quad(lambda x: density_at(w, [x, 0.0, 0.0]) * w.speed**2, 0.0, w.wavelength, limit=200)
    assert val == pytest.approx(M_ELECTRON * 1e6**2, rel=1e-10)


@given(masses, speeds)
def test_energy_split(m, s):
    w = make_wave(m, s)
    e = energy_split(w)
    assert e.w_kinetic == e.w_potential
    assert abs(e.w_total / (m * s**2) - 1) < 1e-12
    assert abs(e.w_total / (U.hbar * w.omega) - 1) < 1e-12


def test_energy_split_example_and_photon():
    w = make_wave(M_ELECTRON, 1e6)
    assert energy_split(w).w_total == pytest.approx(9.109e-19, rel=1e-3)
    p = make_photon_wave(5e14)
    assert p.speed == U.c
    assert energy_split(p).w_total == pytest.approx(U.h * 5e14, rel=1e-12)
    assert energy_split(p).w_total == pytest.approx(3.313e-19, rel=1e-3)


def test_time_derivatives_against_finite_differences():
    w = make_wave(M_ELECTRON, [6e5, 8e5, 0.0], phase=0.3)
    x = np.array([[1e-10, 2e-10, 0.0], [3e-10, -1e-10, 0.0]])
    h = 1e-4 / w.omega
    for name in ("density", "psi"):
        f = getattr(w, name)
        fd1 = (f(x, h) - f(x, -h)) / (2 * h)
        fd2 = (f(x, h) - 2 * f(x, 0.0) + f(x, -h)) / h**2
        scale = w.rho0 if name == "density" else w.psi0
        deriv = getattr(w, f"{name}_dt")
        assert np.allclose(deriv(x, 0.0, 1), fd1, rtol=0, atol=1e-6 * scale * w.omega)
        assert np.allclose(deriv(x, 0.0, 2), fd2, rtol=0, atol=1e-4 * scale * w.omega**2)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        make_wave(M_ELECTRON, 0.0)
    with pytest.raises(ValueError):
        make_wave(0.0, 1e6)
    with pytest.raises(ValueError):
        make_wave(M_ELECTRON, 1e6, volume=-1.0)
    with pytest.raises(ValueError):
        make_photon_wave(0.0)


def test_json_round_trip():
    w = make_wave(M_ELECTRON, [1e6, 2e5, -3e5], phase=0.25)
    back = wave_from_json(wave_to_json(w))
    assert back.kind == w.kind and back.m == w.m and back.omega == w.omega
    assert np.array_equal(back.k, w.k) and np.array_equal(back.u, w.u)
    assert back.rho0 == w.rho0 and back.phase == w.phase
    assert set(w.to_dict()) >= {"kind", "m", "u", "rho0", "k", "omega", "psi0"}


def test_scaled_changes_only_amplitude():
    w = make_wave(M_ELECTRON, 1e6)
    s = w.scaled(3.0)
    assert s.rho0 == 3 * w.rho0
    assert s.omega == w.omega and np.array_equal(s.k, w.k)
    assert s.psi0 == pytest.approx(math.sqrt(3 * w.rho0))


@settings(max_examples=30)
@given(masses, speeds, st.floats(0.1, 10.0))
def test_density_mean_is_independent_of_volume(m, s, vol_factor):
    w = make_wave(m, s, volume=vol_factor * 1e-9)
    assert w.mean_density * w.volume == pytest.approx(m, rel=1e-12)
