"""Plane material waves: real wave function, oscillating density and the
complementary intrinsic potential.

A wave of a particle with mass ``m`` and velocity ``u`` has

    k = m u / hbar,    omega = m |u|^2 / hbar,    rho = rho0 sin^2(k.x - omega t)

so the phase velocity ``omega / |k|`` equals ``|u|``. The intrinsic potential
``phi = phi0 - rho |u|^2`` with ``phi0 = rho0 |u|^2`` keeps the total energy
density constant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .units import UnitSystem, codata_units

__all__ = [
    "PlaneMaterialWave",
    "EnergySplit",
    "make_wave",
    "make_photon_wave",
    "density_at",
    "intrinsic_potential_at",
    "energy_split",
    "wave_to_json",
    "wave_from_json",
]

KINDS = ("particle", "photon")


def _vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = np.array([float(arr), 0.0, 0.0])
    if arr.shape != (3,):
        raise ValueError(f"expected a scalar or a 3-vector, got shape {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PlaneMaterialWave:
    """One monochromatic particle or photon mode.

    ``rho0`` is the peak mass density; the mean density is ``rho0 / 2``.
    ``psi0`` is kept for reporting only (the normalisation constant between
    ``psi0^2`` and ``rho0`` is taken as 1). ``phase`` is a global phase offset.
    """

    kind: str
    m: float
    u: np.ndarray
    k: np.ndarray
    omega: float
    rho0: float
    volume: float
    psi0: float = field(default=float("nan"))
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "u", _vec3(self.u))
        object.__setattr__(self, "k", _vec3(self.k))
        if self.rho0 < 0:
            raise ValueError("rho0 must be non-negative")
        if math.isnan(self.psi0):
            object.__setattr__(self, "psi0", math.sqrt(self.rho0))

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.u))

    @property
    def wavenumber(self) -> float:
        return float(np.linalg.norm(self.k))

    @property
    def wavelength(self) -> float:
        return 2 * math.pi / self.wavenumber

    @property
    def frequency(self) -> float:
        return self.omega / (2 * math.pi)

    @property
    def phase_speed(self) -> float:
        return self.omega / self.wavenumber

    @property
    def phi0(self) -> float:
        """Total intrinsic energy density ``rho0 |u|^2``."""
        return self.rho0 * self.speed**2

    @property
    def mean_density(self) -> float:
        return self.rho0 / 2

    # -- evaluation -------------------------------------------------------
    # x has shape (..., 3); results have shape (...) or (..., 3)

    def theta(self, x, t=0.0):
        x = np.asarray(x, dtype=float)
        return x @ self.k - self.omega * t + self.phase

    def psi(self, x, t=0.0):
        return self.psi0 * np.sin(self.theta(x, t))

    def psi_dt(self, x, t=0.0, order=1):
        # d/dt sin(theta) with dtheta/dt = -omega
        th = self.theta(x, t)
        return self.psi0 * (-self.omega) ** order * np.sin(th + order * np.pi / 2)

    def density(self, x, t=0.0):
        return self.rho0 * np.sin(self.theta(x, t)) ** 2

    def density_dt(self, x, t=0.0, order=1):
        """``order``-th time derivative of the density, in closed form."""
        if order == 0:
            return self.density(x, t)
        th2 = 2 * self.theta(x, t)
        # rho = rho0/2 - (rho0/2) cos(2 theta)
        return -(self.rho0 / 2) * (-2 * self.omega) ** order * np.cos(th2 + order * np.pi / 2)

    def momentum(self, x, t=0.0):
        return self.density(x, t)[..., None] * self.u

    def momentum_dt(self, x, t=0.0, order=1):
        return self.density_dt(x, t, order)[..., None] * self.u

    def potential(self, x, t=0.0):
        return self.phi0 - self.density(x, t) * self.speed**2

    def potential_dt(self, x, t=0.0, order=1):
        if order == 0:
            return self.potential(x, t)
        return -self.speed**2 * self.density_dt(x, t, order)

    def with_omega(self, omega: float) -> PlaneMaterialWave:
        """Copy with a different angular frequency (used for negative controls)."""
        return replace(self, omega=float(omega))

    def scaled(self, factor: float) -> PlaneMaterialWave:
        """Copy with ``rho0`` scaled by ``factor``; ``k`` and ``omega`` are kept."""
        return replace(self, rho0=self.rho0 * factor, psi0=float("nan"))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "u": self.u.tolist(),
            "rho0": self.rho0,
            "k": self.k.tolist(),
            "omega": self.omega,
            "psi0": self.psi0,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class EnergySplit:
    w_kinetic: float
    w_potential: float
    w_total: float
    volume: float


def make_wave(m, u, volume=None, units: UnitSystem | None = None, kind="particle", phase=0.0):
    """Plane material wave of a particle of mass ``m`` (kg) and velocity ``u`` (m/s).

    ``u`` may be a 3-vector or a scalar (taken along x). The particle volume
    defaults to one wavelength times unit cross-section.
    """
    units = units or codata_units()
    u = _vec3(u)
    speed = float(np.linalg.norm(u))
    if not speed > 0:
        raise ValueError("velocity must be non-zero")
    if not m > 0:
        raise ValueError("mass must be positive")
    k = m * u / units.hbar
    omega = m * speed**2 / units.hbar
    if volume is None:
        volume = 2 * math.pi / float(np.linalg.norm(k)) * 1.0
    if not volume > 0:
        raise ValueError("volume must be positive")
    rho0 = 2 * m / volume
    return PlaneMaterialWave(kind=kind, m=float(m), u=u, k=k, omega=omega, rho0=rho0,
                             volume=float(volume), phase=float(phase))


def make_photon_wave(nu, direction=(1.0, 0.0, 0.0), volume=None, units: UnitSystem | None = None,
                     phase=0.0):
    """Photon of frequency ``nu`` (Hz) as a material wave moving at ``c``.

    The mass follows from ``m c^2 = h nu``, which gives ``|k| = 2 pi nu / c``
    and ``omega = 2 pi nu``.
    """
    units = units or codata_units()
    if not nu > 0:
        raise ValueError("frequency must be positive")
    d = _vec3(direction)
    d = d / np.linalg.norm(d)
    m = units.h * nu / units.c**2
    return make_wave(m, units.c * d, volume=volume, units=units, kind="photon", phase=phase)


def density_at(w: PlaneMaterialWave, x, t=0.0):
    return w.density(x, t)


def intrinsic_potential_at(w: PlaneMaterialWave, x, t=0.0):
    return w.potential(x, t)


def energy_split(w: PlaneMaterialWave) -> EnergySplit:
    """Kinetic and intrinsic-potential energy of the whole particle.

    Each is ``V_P * (rho_bar / 2) |u|^2 = m |u|^2 / 2``; they sum to ``hbar omega``.
    """
    # mass integrated over the particle volume
    mass = w.mean_density * w.volume
    wk = 0.5 * mass * w.speed**2
    return EnergySplit(w_kinetic=wk, w_potential=wk, w_total=2 * wk, volume=w.volume)


def wave_to_json(w: PlaneMaterialWave) -> str:
    return json.dumps(w.to_dict(), sort_keys=True)


def wave_from_json(text: str) -> PlaneMaterialWave:
    d = json.loads(text)
    rho0 = float(d["rho0"])
    m = float(d["m"])
    volume = 2 * m / rho0 if rho0 > 0 else 1.0
    return PlaneMaterialWave(
        kind=d["kind"], m=m, u=d["u"], k=d["k"], omega=float(d["omega"]), rho0=rho0,
        volume=volume, psi0=float(d.get("psi0", math.sqrt(rho0))), phase=float(d.get("phase", 0.0)),
    )
