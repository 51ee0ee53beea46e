import math

import numpy as np
import pytest
import scipy.constants as sc
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from matterwave import interactions as it
from matterwave.units import codata_units

U = codata_units()


@given(st.floats(0, 1e6), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e6, 1e6))
def test_hamiltonian_bookkeeping(rho, xdot, phi, sigma):
    s = it.InteractionState(rho, xdot, phi, sigma)
    h = it.interaction_hamiltonian(s)
    # H0 - H loses the kinetic part to rounding when it is tiny against |H|
    assert h["H0"] - h["H"] == pytest.approx(rho * xdot**2, rel=1e-12, abs=4e-16 * abs(h["H"]) + 1e-300)
    assert h["H_w"] == -rho * xdot**2
    assert h["rho_ph_c2"] >= 0


def test_hamiltonian_vector_velocity():
    s = it.InteractionState(2.0, (1.0, 2.0, 2.0), 0.0, 1.0)
    assert s.xdot_sq == 9.0
    assert it.interaction_hamiltonian(s)["rho_ph_c2"] == 18.0
    with pytest.raises(ValueError):
        it.InteractionState(-1.0, 0.0, 0.0, 0.0)


def test_photon_energy_from_trajectory_against_quadrature():
    t = np.linspace(0.0, 3.0, 3001)
    xdot = np.cos(t)
    grad = np.sin(2 * t) + 0.5
    sigma, rho, v0 = 1.7, 0.3, 2.0
    out = it.photon_energy_from_trajectory(t, xdot, grad, rho, sigma, v0)
    for i in (500, 1700, 3000):
        val, _ = quad(lambda s: sigma * math.cos(s) * (math.sin(2 * s) + 0.5), 0.0, t[i])
        assert out["V"][i] == pytest.approx(v0 - val, abs=1e-6)
        assert out["rho_ph_c2"][i] == pytest.approx(v0 - val - rho * math.cos(t[i]) ** 2, abs=1e-6)


def test_photon_energy_vector_samples():
    t = np.linspace(0.0, 1.0, 11)
    xdot = np.tile([1.0, 0.0, 2.0], (11, 1))
    grad = np.tile([3.0, 5.0, 0.5], (11, 1))
    out = it.photon_energy_from_trajectory(t, xdot, grad, 1.0, 2.0)
    # constant power 2 * (3 + 1) = 8
    assert np.allclose(out["V"], -8.0 * t)
    assert np.allclose(out["rho_ph_c2"], -8.0 * t - 5.0)


def test_acceleration_without_photon():
    s = it.InteractionState(2.0, 0.0, 0.0, 4.0)
    assert np.array_equal(it.acceleration_no_photon(s, [1.0, -2.0, 0.0]), [-1.0, 2.0, -0.0])
    with pytest.raises(ValueError):
        it.acceleration_no_photon(it.InteractionState(0.0, 0.0, 0.0, 1.0), [1.0, 0.0, 0.0])


@given(st.floats(0, 1e3), st.floats(0, 1e3))
def test_polarization_limits(k1, k2):
    assert it.polarization_shift(k1, k2, 0.0)["k_sq"] == pytest.approx((k1 + k2) ** 2, rel=1e-12, abs=1e-300)
    perp = it.polarization_shift(k1, k2, math.pi / 2)["k_sq"]
    assert perp == pytest.approx(k1**2 + k2**2, rel=1e-12, abs=1e-9 * k1 * k2 + 1e-300)
    anti = it.polarization_shift(k1, k2, math.pi)["k_sq"]
    assert anti == pytest.approx((k1 - k2) ** 2, abs=1e-9 * (k1 + k2) ** 2 + 1e-300)


def test_polarization_mean_by_quadrature():
    k1, k2 = 3.0, 1.5
    val, _ = quad(lambda th: abs(it.polarization_shift(k1, k2, th)["delta"]), 0.0, math.pi, points=[math.pi / 2])
    assert val / math.pi == pytest.approx(it.polarization_shift(k1, k2, 0.0)["delta_mean"], rel=1e-10)


def test_polarization_mc():
    out = it.polarization_mc(1.0, 1.0, n=200_000, seed=3)
    # sample std of |cos| is about 0.31, so 4 sigma over 2e5 samples is 0.3 %
    assert abs(out["relative_error"]) < 3e-3
    assert out["expected_delta_W"] == pytest.approx(2 / math.pi, rel=1e-15)
    assert it.polarization_mc(1.0, 1.0, n=1000, seed=3) == it.polarization_mc(1.0, 1.0, n=1000, seed=3)
    with pytest.raises(ValueError):
        it.polarization_mc(1.0, 1.0, n=0)
    with pytest.raises(ValueError):
        it.polarization_shift(-1.0, 1.0, 0.0)


@pytest.mark.parametrize("kind,s,g", [("boson", 1.0, 1.0), ("fermion", 0.5, 2.0)])
def test_spin_assignment(kind, s, g):
    a = it.spin_assign(kind, B_axis=(0.0, 3.0, 4.0))
    assert a.s == s * U.hbar and a.g == g
    assert a.g * a.s == pytest.approx(U.hbar, rel=1e-15)
    assert np.allclose(a.axis, [0.0, 0.6, 0.8])
    out = it.spin_energy_identity(a, 1e10)
    assert out["ratio"] == pytest.approx(1.0, rel=1e-12)


def test_spin_assignment_errors():
    with pytest.raises(ValueError):
        it.spin_assign("anyon")
    with pytest.raises(ValueError):
        it.spin_assign("boson", B_axis=(0.0, 0.0, 0.0))


def test_compton_shift_against_standard_formula():
    lam_c = sc.h / (sc.m_e * sc.c)
    out = it.compton_shift(7.1e-11, math.pi / 2)
    assert out["delta_lambda"] == pytest.approx(lam_c, rel=5e-5)
    assert it.compton_shift(7.1e-11, math.pi)["delta_lambda"] == pytest.approx(2 * lam_c, rel=5e-5)
    # first-order Doppler shift reduces to the geometric mean of the two wavelengths
    assert out["doppler_shift_first_order"] == pytest.approx(math.sqrt(out["lambda_compton"] * 7.1e-11), rel=1e-12)
    assert not out["chain_closes"]
    assert out["doppler_shift_exact"] > out["doppler_shift_first_order"]
    with pytest.raises(ValueError):
        it.compton_shift(0.0, 1.0)


@given(st.floats(1e-12, 1e-6), st.floats(1e-12, 1e-6), st.floats(0, math.pi))
def test_compton_shift_independent_of_wavelength(l1, l2, theta):
    a = it.compton_shift(l1, theta)["delta_lambda"]
    b = it.compton_shift(l2, theta)["delta_lambda"]
    assert a == b


@settings(max_examples=40)
@given(st.floats(-20, 20), st.floats(0.0, 12.0))
def test_window_average_against_brute_force(theta0, width):
    if width == 0:
        assert it.window_average_sign(theta0, 0.0) == np.sign(math.cos(theta0))
        return
    s = theta0 - width / 2 + (np.arange(200_000) + 0.5) * width / 200_000
    brute = np.mean(np.sign(np.cos(s)))
    assert float(it.window_average_sign(theta0, width)) == pytest.approx(brute, abs=1e-4)


@settings(max_examples=40)
@given(st.floats(-20, 20), st.floats(0.01, 6.0))
def test_crossing_detection_against_brute_force(theta0, width):
    s = np.linspace(theta0 - width / 2, theta0 + width / 2, 20001)
    signs = np.sign(np.cos(s))
    brute = bool(np.any(signs[1:] != signs[:-1]))
    # skip windows whose edge sits on a zero within the sampling resolution
    edge = (theta0 + np.array([-width, width]) / 2 - math.pi / 2) / math.pi
    if np.any(np.abs(edge - np.round(edge)) < 1e-3):
        return
    assert bool(it._has_crossing(theta0, width)) == brute


def test_epr_zero_window_is_perfectly_anticorrelated():
    out = it.epr_sample(it.EPRSampler(1.0, 2 * math.pi, 0.1, rng_seed=5), 10_000, 0.0, 0.0)
    assert out["corr"] == -1.0 and out["corr_definite"] == -1.0
    assert out["valid_fraction"] == 1.0 and out["crossing_free_fraction"] == 1.0


@pytest.mark.parametrize("frac", [0.05, 0.2, 0.45])
def test_epr_matches_analytic_mean_square(frac):
    # equal windows: product = -A^2, and E[A^2] = 1 - 4 w / (3 lambda) for w <= lambda / 2
    lam = 2.0
    out = it.epr_sample(it.EPRSampler(lam, 1.0, frac * lam, rng_seed=11), 200_000)
    expected = -(1 - 4 * frac / 3)
    assert out["corr"] == pytest.approx(expected, abs=4e-3)
    assert out["corr_definite"] == out["corr"]
    assert out["corr_crossing_free"] == -1.0
    assert out["crossing_free_fraction"] == pytest.approx(1 - 2 * frac, abs=5e-3)


def test_epr_large_window_is_not_definite():
    out = it.epr_sample(it.EPRSampler(1.0, 1.0, 0.7, rng_seed=2), 1000)
    assert math.isnan(out["corr_definite"]) and out["valid_fraction"] == 0.0
    mixed = it.epr_sample(it.EPRSampler(1.0, 1.0, 0.1, rng_seed=2), 1000, 0.1, 0.6)
    assert mixed["valid_fraction"] == 0.5 and math.isnan(mixed["corr_definite"])


def test_epr_correlation_magnitude_nonincreasing_in_window():
    mags = []
    for frac in np.linspace(0.0, 1.0, 11):
        s = it.EPRSampler(1.0, 1.0, max(frac, 1e-9), rng_seed=42)
        mags.append(abs(it.epr_sample(s, 50_000, frac, frac)["corr"]))
    assert all(b <= a + 1e-12 for a, b in zip(mags, mags[1:]))


def test_epr_reproducible_and_validated():
    s = it.EPRSampler(1.0, 1.0, 0.2, rng_seed=9)
    assert it.epr_sample(s, 500) == it.epr_sample(s, 500)
    assert it.epr_sample(s, 500)["window_time1"] == pytest.approx(0.2 * s.period)
    for bad in ({"lam": 0.0, "omega": 1.0, "window_dx": 0.1}, {"lam": 1.0, "omega": 1.0, "window_dx": 0.0}):
        with pytest.raises(ValueError):
            it.EPRSampler(**bad)
    with pytest.raises(ValueError):
        it.epr_sample(s, 0)
    with pytest.raises(ValueError):
        it.epr_sample(s, 10, -0.1)
