"""Interaction energetics, polarization shifts, spin assignments, Compton
scattering and a seeded sampler for oscillating-spin pair correlations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .electrodynamics import RotationState, bfield_from_rotation
from .units import UnitSystem, codata_units, derive_constants

__all__ = [
    "InteractionState",
    "interaction_hamiltonian",
    "photon_energy_from_trajectory",
    "acceleration_no_photon",
    "polarization_shift",
    "polarization_mc",
    "SpinAssignment",
    "spin_assign",
    "spin_energy_identity",
    "compton_shift",
    "EPRSampler",
    "epr_sample",
    "window_average_sign",
]


@dataclass(frozen=True)
class InteractionState:
    """Electron density, velocity, external potential and charge density at a point."""

    rho_el0: float
    xdot: float | tuple
    phi_ext: float
    sigma_el0: float

    def __post_init__(self):
        if self.rho_el0 < 0:
            raise ValueError("densities must be non-negative")

    @property
    def xdot_sq(self) -> float:
        v = np.asarray(self.xdot, dtype=float)
        return float(v @ v) if v.ndim else float(v * v)


def interaction_hamiltonian(s: InteractionState) -> dict:
    """``H0 = rho xdot^2 + sigma phi``, ``H = sigma phi`` and ``H_w = H - H0``.

    The photon energy density ``rho_ph c^2`` is identified with ``-H_w``.
    """
    kinetic = s.rho_el0 * s.xdot_sq
    h = s.sigma_el0 * s.phi_ext
    h0 = kinetic + h
    return {"H": h, "H0": h0, "H_w": -kinetic, "rho_ph_c2": kinetic}


def photon_energy_from_trajectory(t, xdot, grad_phi, rho_el0: float, sigma_el0: float, v0: float = 0.0) -> dict:
    """Photon energy density ``V - rho xdot^2`` along a sampled trajectory.

    ``V(t) = v0 - integral sigma xdot . grad phi dt`` (cumulative trapezoid).
    ``xdot`` and ``grad_phi`` are ``(n,)`` or ``(n, 3)`` samples at times ``t``.
    """
    t = np.asarray(t, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    grad_phi = np.asarray(grad_phi, dtype=float)
    power = sigma_el0 * (np.sum(xdot * grad_phi, axis=-1) if xdot.ndim > 1 else xdot * grad_phi)
    steps = 0.5 * (power[1:] + power[:-1]) * np.diff(t)
    v = v0 - np.concatenate([[0.0], np.cumsum(steps)])
    speed_sq = np.sum(xdot**2, axis=-1) if xdot.ndim > 1 else xdot**2
    return {"V": v, "rho_ph_c2": v - rho_el0 * speed_sq}


def acceleration_no_photon(s: InteractionState, grad_phi) -> np.ndarray:
    """``d xdot / dt = -(sigma / 2) grad phi / rho``; ``sigma / 2`` is the mean charge density."""
    if not s.rho_el0 > 0:
        raise ValueError("acceleration needs a positive density")
    return -(s.sigma_el0 / 2) * np.asarray(grad_phi, dtype=float) / s.rho_el0


def polarization_shift(k_el: float, k_ph: float, theta) -> dict:
    """Combined ``k^2`` for field vectors at angle ``theta``, by the cosine rule.

    ``delta`` is the deviation from the plain sum ``k_el^2 + k_ph^2``;
    ``delta_mean`` is its average magnitude for a uniform angle, ``(2/pi) 2 k_el k_ph``.
    """
    if k_el < 0 or k_ph < 0:
        raise ValueError("wavenumbers must be non-negative")
    delta = 2 * k_el * k_ph * np.cos(theta)
    return {
        "k_sq": k_el**2 + k_ph**2 + delta,
        "delta": delta,
        "delta_mean": 2 / math.pi * 2 * k_el * k_ph,
    }


def polarization_mc(k_el: float, k_ph: float, n: int = 1_000_000, seed: int = 0, w0: float = 1.0) -> dict:
    """Monte-Carlo mean of ``|delta k^2|`` over uniform angles in ``[0, pi]``.

    Energy shifts are expressed relative to the undisturbed value
    ``k_el^2 + k_ph^2`` taken as ``w0``; for equal wavenumbers the mean
    ``|delta W|`` tends to ``(2/pi) w0``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, math.pi, n)
    shift = polarization_shift(k_el, k_ph, theta)
    base = k_el**2 + k_ph**2
    mean_abs = float(np.mean(np.abs(shift["delta"])))
    expected = shift["delta_mean"]
    return {
        "samples": n,
        "seed": seed,
        "mean_abs_delta_k_sq": mean_abs,
        "expected_delta_k_sq": expected,
        "mean_abs_delta_W": w0 * mean_abs / base,
        "expected_delta_W": w0 * expected / base,
        "relative_error": mean_abs / expected - 1.0,
    }


@dataclass(frozen=True, eq=False)
class SpinAssignment:
    kind: str
    s: float
    g: float
    axis: np.ndarray


_SPIN = {"boson": (1.0, 1.0, "intrinsic", 1.0), "fermion": (0.5, 2.0, "external", 0.5)}


def spin_assign(kind: str, B_axis=(0.0, 0.0, 1.0), u: UnitSystem | None = None) -> SpinAssignment:
    """Spin ``hbar`` with ``g = 1`` for bosons, ``hbar/2`` with ``g = 2`` for fermions, along ``B_axis``."""
    u = u or codata_units()
    if kind not in _SPIN:
        raise ValueError(f"unknown particle kind {kind!r}; use 'boson' or 'fermion'")
    axis = np.asarray(B_axis, dtype=float)
    norm = np.linalg.norm(axis)
    if axis.shape != (3,) or not norm > 0:
        raise ValueError("B_axis must be a non-zero 3-vector")
    s_frac, g, _, _ = _SPIN[kind]
    return SpinAssignment(kind=kind, s=s_frac * u.hbar, g=g, axis=axis / norm)


def spin_energy_identity(a: SpinAssignment, omega: float, u: UnitSystem | None = None) -> dict:
    """Interaction energy ``g (e / 2 m) B . s`` against ``hbar omega`` (boson) or ``hbar omega / 2`` (fermion).

    B comes from a rotation state with angular velocity ``omega`` along the
    spin axis: intrinsic ``2 (m/e) omega`` for bosons, external ``(m/e) omega``
    for fermions. B is in the field units where it is ``c`` times the SI value.
    """
    u = u or codata_units()
    _, _, convention, fraction = _SPIN[a.kind]
    # any radius perpendicular to the axis; rho cancels in rho / sigma_bar
    perp = np.cross(a.axis, [1.0, 0.0, 0.0])
    if np.linalg.norm(perp) < 1e-6:
        perp = np.cross(a.axis, [0.0, 1.0, 0.0])
    rot = RotationState(omega * a.axis, perp, 1.0)
    b = bfield_from_rotation(rot, convention, u)
    w = a.g * u.charge_to_mass / 2 * float(b @ (a.s * a.axis))
    expected = fraction * u.hbar * omega
    return {"W": w, "W_expected": expected, "ratio": w / expected, "g_s": a.g * a.s, "hbar": u.hbar}


def compton_shift(lambda_s: float, theta: float, u: UnitSystem | None = None) -> dict:
    """Compton shift ``lambda_C (1 - cos theta)`` with the recoil-Doppler intermediates.

    The longitudinal recoil speed is ``u_el0 = sqrt(hbar omega / m_e)``. The
    first-order Doppler shift ``lambda_s u / c`` equals ``sqrt(lambda_C lambda_s)``,
    not ``lambda_C``, so ``chain_closes`` is reported as a separate flag.
    """
    u = u or codata_units()
    if not lambda_s > 0:
        raise ValueError("lambda_s must be positive")
    lam_c = derive_constants(u).lambda_compton
    omega = 2 * math.pi * u.c / lambda_s
    u_el0 = math.sqrt(u.hbar * omega / u.m_e)
    beta = u_el0 / u.c
    doppler_first = lambda_s * beta
    doppler_exact = lambda_s * (math.sqrt((1 + beta) / (1 - beta)) - 1) if beta < 1 else math.inf
    delta = lam_c * (1 - math.cos(theta))
    return {
        "lambda_s": lambda_s,
        "theta": theta,
        "omega": omega,
        "u_el0": u_el0,
        "lambda_compton": lam_c,
        "doppler_shift_first_order": doppler_first,
        "doppler_shift_exact": doppler_exact,
        "chain_ratio": doppler_first / lam_c,
        "chain_closes": bool(abs(doppler_first / lam_c - 1) < 1e-6),
        "delta_lambda": delta,
        "lambda_prime": lambda_s + delta,
    }


def window_average_sign(theta0, width):
    """Mean of ``sign(cos theta)`` over ``[theta0 - width/2, theta0 + width/2]``.

    Uses the triangle-wave antiderivative of ``sign(cos)``; a zero width
    returns the point value.
    """
    theta0 = np.asarray(theta0, dtype=float)
    width = float(width)
    point = np.sign(np.cos(theta0))
    if width == 0:
        return point
    # windows without a sign change are exact; this also avoids cancellation for tiny widths
    avg = (_sign_cos_integral(theta0 + width / 2) - _sign_cos_integral(theta0 - width / 2)) / width
    return np.where(_has_crossing(theta0, width), avg, point)


def _sign_cos_integral(theta):
    y = np.mod(theta + np.pi / 2, 2 * np.pi)
    return np.where(y <= np.pi, y - np.pi / 2, 1.5 * np.pi - y)


def _has_crossing(theta0, width):
    # zeros of cos at pi/2 + j pi; strictly inside the window
    lo = theta0 - width / 2 - np.pi / 2
    hi = theta0 + width / 2 - np.pi / 2
    return np.floor(hi / np.pi) > np.floor(lo / np.pi)


@dataclass(frozen=True)
class EPRSampler:
    """Pair source whose spin sign oscillates as ``sign(cos(k x - omega t + phi0))``.

    ``rng_seed`` feeds numpy's PCG64 generator; each call to
    :func:`epr_sample` starts from that seed.
    """

    lam: float
    omega: float
    window_dx: float
    rng_seed: int = 0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("wavelength must be positive")
        if not self.window_dx > 0:
            raise ValueError("window_dx must be positive")

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega if self.omega else math.inf


def epr_sample(s: EPRSampler, n: int, detector1_window: float | None = None,
               detector2_window: float | None = None) -> dict:
    """Correlation of window-averaged spin signs for ``n`` anticorrelated pairs.

    Each pair gets a uniform random phase; detector 1 reads the average of
    ``sign(cos)`` over its window, detector 2 the average of ``-sign(cos)``.
    A reading is definite when its window is below ``lambda / 2``.
    ``corr`` is the mean product over all pairs, ``corr_definite`` the same
    over pairs where both readings are definite (NaN if there are none), and
    ``corr_crossing_free`` the mean over pairs whose windows contain no sign
    change.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    w1 = s.window_dx if detector1_window is None else float(detector1_window)
    w2 = s.window_dx if detector2_window is None else float(detector2_window)
    if w1 < 0 or w2 < 0:
        raise ValueError("windows must be non-negative")
    k = 2 * math.pi / s.lam
    rng = np.random.default_rng(s.rng_seed)
    phase = rng.uniform(0.0, 2 * math.pi, n)
    a1 = window_average_sign(phase, k * w1)
    a2 = -window_average_sign(phase, k * w2)
    prod = a1 * a2
    definite1 = w1 < s.lam / 2
    definite2 = w2 < s.lam / 2
    both = definite1 and definite2
    free = ~(_has_crossing(phase, k * w1) | _has_crossing(phase, k * w2))
    return {
        "n": n,
        "seed": s.rng_seed,
        "window1": w1,
        "window2": w2,
        "corr": float(np.mean(prod)),
        "corr_definite": float(np.mean(prod)) if both else math.nan,
        "valid_fraction": (int(definite1) + int(definite2)) / 2,
        "corr_crossing_free": float(np.mean(prod[free])) if np.any(free) else math.nan,
        "crossing_free_fraction": float(np.mean(free)),
        "window_time1": w1 / s.lam * s.period,
        "window_time2": w2 / s.lam * s.period,
    }
