"""Electric and magnetic fields defined from momentum density and the
intrinsic potential, with residual checks of the Maxwell-form identities.

Field definitions on a grid (``sigma_bar`` converts mass to charge density)::

    sigma_bar E = -grad phi + dp/dt
    B           = -(f / sigma_bar) curl p      f = 1 (intrinsic), 1/2 (external)

Magnetostatic results (rotation states, homogeneous-field orbits, the
Ampere correspondence) use ``B = (rho / 2 sigma_bar) curl u``, with the
sign under which ``curl (omega x r) = 2 omega`` gives ``B = (rho/sigma_bar) omega``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import (
    DEFAULT_LADDER, Grid, active_axes, check_commensurate, curl, divergence, gradient, ladder_report,
    laplacian, make_report,
)
from .units import UnitSystem, codata_units
from .waves import PlaneMaterialWave

__all__ = [
    "CONVENTIONS",
    "EMFieldPair",
    "RotationState",
    "sigma_bar_of",
    "efield_from_wave",
    "free_efield_residual",
    "bfield_from_wave",
    "bfield_from_rotation",
    "em_fields_from_wave",
    "maxwell_residuals",
    "em_wave_residual",
    "vector_potential_relation",
    "lorentz_force_balance",
    "homogeneous_field_orbit",
    "local_curl",
    "orbit_field_roundtrip",
    "ampere_current",
]

CONVENTIONS = {"intrinsic": 1.0, "external": 0.5}


def _factor(convention: str) -> float:
    try:
        return CONVENTIONS[convention]
    except KeyError:
        raise ValueError(f"convention must be one of {sorted(CONVENTIONS)}") from None


def sigma_bar_of(w: PlaneMaterialWave, units: UnitSystem | None = None) -> float:
    """``(e / m_e) * rho_bar`` for the wave's mean density."""
    units = units or codata_units()
    return units.sigma_bar_rule(w.mean_density)


def _inverse(sigma_bar: float) -> float:
    # a null wave has sigma_bar = 0 and every field term vanishes with it
    return 1.0 / sigma_bar if sigma_bar else 0.0


@dataclass(frozen=True, eq=False)
class EMFieldPair:
    """Sampled E and B (shape ``grid.shape + (3,)``) with optional closed-form time derivatives."""

    E: np.ndarray
    B: np.ndarray
    sigma_bar: float
    factor_convention: str = "intrinsic"
    E_t: np.ndarray | None = None
    B_t: np.ndarray | None = None
    E_tt: np.ndarray | None = None
    B_tt: np.ndarray | None = None

    def __post_init__(self):
        _factor(self.factor_convention)


@dataclass(frozen=True, eq=False)
class RotationState:
    omega_vec: np.ndarray
    r: np.ndarray
    rho: float

    def __post_init__(self):
        object.__setattr__(self, "omega_vec", np.asarray(self.omega_vec, dtype=float))
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))
        if self.rho < 0:
            raise ValueError("density must be non-negative")

    @property
    def velocity(self) -> np.ndarray:
        return np.cross(self.omega_vec, self.r)


def efield_from_wave(w: PlaneMaterialWave, g: Grid, t: float = 0.0, order: int = 2,
                     units: UnitSystem | None = None, time_order: int = 0) -> np.ndarray:
    """E (or its ``time_order``-th time derivative) from ``-grad phi + dp/dt``."""
    inv = _inverse(sigma_bar_of(w, units))
    x = g.points()
    grad_phi = gradient(w.potential_dt(x, t, time_order), g, order)
    return inv * (-grad_phi + w.momentum_dt(x, t, time_order + 1))


def free_efield_residual(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                        units: UnitSystem | None = None, ladder=DEFAULT_LADDER, n: int = 256):
    """Size of ``sigma_bar E`` for a wave in uniform motion, where it should vanish.

    The two terms ``-grad phi`` and ``dp/dt`` cancel for a consistent wave;
    the scale is ``||grad phi||``.
    """
    g = g or Grid.for_wave(w, n)
    check_commensurate(w, g)

    def evaluate(grid):
        x = grid.points()
        grad_phi = gradient(w.potential(x, t), grid, order)
        return -grad_phi + w.momentum_dt(x, t, 1), grad_phi

    return ladder_report(evaluate, g, active_axes(w, g), ladder, identity="-grad phi + dp/dt")


def bfield_from_wave(w, g: Grid | None = None, t: float = 0.0, convention: str | None = None,
                     order: int = 2, units: UnitSystem | None = None, time_order: int = 0) -> np.ndarray:
    """B (or a time derivative) from ``-(f / sigma_bar) curl p``.

    A :class:`RotationState` is forwarded to :func:`bfield_from_rotation`
    (external convention by default); waves default to the intrinsic one.
    """
    if isinstance(w, RotationState):
        return bfield_from_rotation(w, convention or "external", units)
    f = _factor(convention or "intrinsic")
    inv = _inverse(sigma_bar_of(w, units))
    p = w.momentum_dt(g.points(), t, time_order) if time_order else w.momentum(g.points(), t)
    return -f * inv * curl(p, g, order)


def bfield_from_rotation(rot: RotationState, convention: str = "external", units: UnitSystem | None = None,
                         sigma_bar: float | None = None) -> np.ndarray:
    """``B = (rho / sigma_bar) omega`` (external); twice that for the intrinsic convention.

    ``sigma_bar`` defaults to ``(e/m_e) rho``, i.e. ``rho / sigma_bar = m_e / e``.
    """
    units = units or codata_units()
    if sigma_bar is None:
        sigma_bar = units.sigma_bar_rule(rot.rho)
    ratio = rot.rho * _inverse(sigma_bar)
    return 2 * _factor(convention) * ratio * rot.omega_vec


def em_fields_from_wave(w: PlaneMaterialWave, g: Grid, t: float = 0.0, order: int = 2,
                        units: UnitSystem | None = None, convention: str = "intrinsic") -> EMFieldPair:
    check_commensurate(w, g)

    def e(n):
        return efield_from_wave(w, g, t, order, units, n)

    def b(n):
        return bfield_from_wave(w, g, t, convention, order, units, n)

    return EMFieldPair(E=e(0), B=b(0), sigma_bar=sigma_bar_of(w, units), factor_convention=convention,
                       E_t=e(1), B_t=b(1), E_tt=e(2), B_tt=b(2))


def maxwell_residuals(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                      units: UnitSystem | None = None, ladder=DEFAULT_LADDER, n: int = 256) -> dict:
    """Faraday, vacuum Ampere and div B residuals of the momentum-defined fields.

    Scales are the magnitudes of the individual terms before they cancel:
    ``|k| ||dp/dt|| / sigma_bar`` for Faraday, ``||grad d(phi)/dt|| / (u^2 sigma_bar)``
    for Ampere and ``|k| ||p|| / sigma_bar`` for div B.
    """
    g = g or Grid.for_wave(w, n)
    check_commensurate(w, g)
    if not w.speed > 0:
        raise ValueError("the wave must move (|u| > 0)")
    u2 = w.speed**2
    kn = w.wavenumber
    inv = _inverse(sigma_bar_of(w, units))
    axes = active_axes(w, g)

    def faraday(grid):
        x = grid.points()
        curl_e = curl(efield_from_wave(w, grid, t, order, units), grid, order)
        db_dt = bfield_from_wave(w, grid, t, "intrinsic", order, units, time_order=1)
        return curl_e + db_dt, kn * inv * w.momentum_dt(x, t, 1)

    def ampere(grid):
        x = grid.points()
        de_dt = efield_from_wave(w, grid, t, order, units, time_order=1)
        curl_b = curl(bfield_from_wave(w, grid, t, "intrinsic", order, units), grid, order)
        potential_part = inv * gradient(w.potential_dt(x, t, 1), grid, order) / u2
        return de_dt / u2 - curl_b, potential_part

    def div_b(grid):
        x = grid.points()
        b = bfield_from_wave(w, grid, t, "intrinsic", order, units)
        return divergence(b, grid, order), kn * inv * w.momentum(x, t)

    return {
        "faraday": ladder_report(faraday, g, axes, ladder, identity="curl E + dB/dt"),
        "ampere_vacuum": ladder_report(ampere, g, axes, ladder, identity="(1/u^2) dE/dt - curl B"),
        "div_B": ladder_report(div_b, g, axes, ladder, identity="div B"),
    }


def em_wave_residual(pair: EMFieldPair, g: Grid, u: float, order: int = 2):
    """``lap F - (1/u^2) d2F/dt2`` for F = E and B together; scale is ``||lap F||``."""
    if pair.E_tt is None or pair.B_tt is None:
        raise ValueError("the field pair needs second time derivatives")
    lap_e = laplacian(pair.E, g, order)
    lap_b = laplacian(pair.B, g, order)
    residual = np.concatenate([lap_e - pair.E_tt / u**2, lap_b - pair.B_tt / u**2], axis=-1)
    return make_report(residual, np.concatenate([lap_e, lap_b], axis=-1), g, phase_speed=u)


def vector_potential_relation(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                              units: UnitSystem | None = None, ladder=DEFAULT_LADDER, n: int = 256) -> dict:
    """``A = -c p`` and the gauge residual ``div A + (1/c) d(phi)/dt``.

    The relation is derived for ``|u| = c``; for slower waves ``|u|`` stands
    in for ``c`` and a warning is issued.
    """
    units = units or codata_units()
    g = g or Grid.for_wave(w, n)
    check_commensurate(w, g)
    in_derivation = abs(w.speed / units.c - 1.0) < 1e-9
    if not in_derivation:
        warnings.warn("vector potential relation holds for |u| = c; using |u| in its place", stacklevel=2)
    speed = units.c if in_derivation else w.speed

    def gauge(grid):
        x = grid.points()
        div_a = divergence(-speed * w.momentum(x, t), grid, order)
        return div_a + w.potential_dt(x, t, 1) / speed, div_a

    return {
        "A": -speed * w.momentum(g.points(), t),
        "ratio": -speed,
        "gauge": ladder_report(gauge, g, active_axes(w, g), ladder),
        "in_derivation": in_derivation,
    }


def lorentz_force_balance(rot: RotationState, units: UnitSystem | None = None, sigma: float | None = None) -> dict:
    """Lorentz and centrifugal force densities of a rotating charge distribution.

    ``F_L = rho (sigma/sigma_bar) omega x (omega x r)`` (``-rho omega^2 r`` for
    ``r`` perpendicular to ``omega``) and ``F_C = -rho omega x (omega x r)``.
    ``sigma`` defaults to the mean value ``sigma_bar = (e/m_e) rho``, where they
    cancel exactly.
    """
    units = units or codata_units()
    sigma_bar = units.sigma_bar_rule(rot.rho)
    sigma_ratio = 1.0 if sigma is None or sigma == sigma_bar else sigma * _inverse(sigma_bar)
    w_x_w_x_r = np.cross(rot.omega_vec, np.cross(rot.omega_vec, rot.r))
    f_l = rot.rho * sigma_ratio * w_x_w_x_r
    f_c = -rot.rho * w_x_w_x_r
    return {"F_L": f_l, "F_C": f_c, "F_net": f_l + f_c}


def homogeneous_field_orbit(B0: float, u0: float, units: UnitSystem | None = None) -> Callable:
    """Velocity field ``u(r) = u0 e_z + B0 (e/m) e_z x r`` in a homogeneous field along z."""
    units = units or codata_units()
    ez = np.array([0.0, 0.0, 1.0])
    qm = units.charge_to_mass

    def velocity(r):
        r = np.asarray(r, dtype=float)
        return u0 * ez + B0 * qm * np.cross(ez, r)

    return velocity


def local_curl(func: Callable, r, h: float) -> np.ndarray:
    """Central-difference curl of a vector function at point ``r``."""
    r = np.asarray(r, dtype=float)
    jac = np.empty((3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        jac[:, j] = (np.asarray(func(r + step)) - np.asarray(func(r - step))) / (2 * h)
    return np.array([jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]])


def orbit_field_roundtrip(B0: float, u0: float = 0.0, r=(0.3, -0.2, 0.1), h: float = 1e-3,
                          units: UnitSystem | None = None) -> np.ndarray:
    """Recover B from the orbit velocity field via ``(rho / 2 sigma_bar) curl u`` with ``rho/sigma_bar = m/e``."""
    units = units or codata_units()
    velocity = homogeneous_field_orbit(B0, u0, units)
    return 0.5 / units.charge_to_mass * local_curl(velocity, r, h)


def ampere_current(j, g: Grid, units: UnitSystem | None = None, sigma: float = 1.0, j_dt=None) -> dict:
    """Current ``J = (m c / 8 pi e sigma) grad(div j)`` of a static flux ``j = sigma u``.

    Also returns ``curl B`` with ``B = (m / 2 e sigma) curl j``, the residual of
    ``curl B = (m / 2 e sigma) grad(div j)`` (it vanishes when ``lap j = 0``,
    the static wave equation) and the conductor potential
    ``phi_ed = (m c / 8 pi e) div u``. Conductor fields are not periodic, so
    one-sided differences are used at the domain edges.
    """
    units = units or codata_units()
    if j_dt is not None and np.any(np.asarray(j_dt) != 0):
        raise ValueError("ampere_current needs a static (time-independent) flux")
    j = np.asarray(j, dtype=float)
    m, e, c = units.m_e, units.e, units.c
    div_j = divergence(j, g, periodic=False)
    grad_div = gradient(div_j, g, periodic=False)
    b = (m / (2 * e * sigma)) * curl(j, g, periodic=False)
    curl_b = curl(b, g, periodic=False)
    rhs = (m / (2 * e * sigma)) * grad_div
    return {
        "J_field": (m * c / (8 * math.pi * e * sigma)) * grad_div,
        "curl_B": curl_b,
        "phi_ed": (m * c / (8 * math.pi * e)) * div_j / sigma,
        "residual": make_report(curl_b - rhs, rhs, g),
    }
