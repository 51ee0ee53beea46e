"""Photons as material waves with a complementary electromagnetic potential.

A photon mode carries the longitudinal momentum density
``p = rho0 c e_k sin^2(theta)`` and the electromagnetic potential
``phi_e = rho0 c^2 cos^2(theta)``; together with ``phi_k = rho0 c^2 sin^2(theta)``
the energy density is constant. The transversal fields use Gaussian-style
amplitudes ``E0 = c sqrt(4 pi rho0)`` so that ``(E^2 + B^2) / 8 pi = phi_e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .electrodynamics import EMFieldPair
from .grid import (
    DEFAULT_LADDER, Grid, active_axes, curl, divergence, l2_norm, ladder_report, laplacian, make_report,
)
from .units import C_LIGHT, UnitSystem, codata_units, derive_constants, gaussian_field_amplitude
from .waves import PlaneMaterialWave

__all__ = [
    "PhotonMode",
    "PhotonPacket",
    "TransferEvent",
    "photon_potentials",
    "transversal_fields",
    "photon_em_pair",
    "transversal_faraday_residual",
    "transfer_rate",
    "charge_quantum",
    "structural_balance",
    "source_term",
]

_ORTHO_TOL = 1e-12


def _unit(v, name) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    n = np.linalg.norm(v)
    if not n > 0:
        raise ValueError(f"{name} must be non-zero")
    return v / n


@dataclass(frozen=True, eq=False)
class PhotonMode:
    """Single photon mode moving at ``c``.

    ``direction = -1`` flips the propagation (``theta = -k.x - omega t``);
    ``sign = -1`` flips the sign of both potentials, which is how an
    opposite-sign partner mode is built.
    """

    rho0: float
    k: np.ndarray
    e_t: np.ndarray
    volume: float = 1.0
    direction: int = 1
    sign: int = 1
    phase: float = 0.0
    c: float = C_LIGHT

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3,) or not np.linalg.norm(k) > 0:
            raise ValueError("k must be a non-zero 3-vector")
        object.__setattr__(self, "k", k)
        e_t = _unit(self.e_t, "e_t")
        if abs(float(e_t @ k)) > _ORTHO_TOL * np.linalg.norm(k):
            raise ValueError("e_t must be transversal (e_t . k = 0)")
        object.__setattr__(self, "e_t", e_t)
        if self.rho0 < 0:
            raise ValueError("rho0 must be non-negative")
        if not self.volume > 0:
            raise ValueError("volume must be positive")
        if self.direction not in (1, -1) or self.sign not in (1, -1):
            raise ValueError("direction and sign must be +1 or -1")

    @classmethod
    def from_frequency(cls, nu: float, axis=(1.0, 0.0, 0.0), e_t=(0.0, 1.0, 0.0), rho0: float = 1.0,
                       **kwargs) -> PhotonMode:
        if not nu > 0:
            raise ValueError("frequency must be positive")
        c = kwargs.get("c", C_LIGHT)
        return cls(rho0=rho0, k=2 * math.pi * nu / c * _unit(axis, "axis"), e_t=e_t, **kwargs)

    @property
    def wavenumber(self) -> float:
        return float(np.linalg.norm(self.k))

    @property
    def omega(self) -> float:
        return self.c * self.wavenumber

    @property
    def e_k(self) -> np.ndarray:
        """Unit propagation vector."""
        return self.direction * self.k / self.wavenumber

    @property
    def phi0(self) -> float:
        return self.rho0 * self.c**2

    def theta(self, x, t=0.0):
        x = np.asarray(x, dtype=float)
        return self.direction * (x @ self.k) - self.omega * t + self.phase

    def momentum(self, x, t=0.0):
        return (self.rho0 * self.c * np.sin(self.theta(x, t)) ** 2)[..., None] * self.e_k

    def as_wave(self) -> PlaneMaterialWave:
        """The longitudinal material wave of the mode (mass ``rho0 V / 2``)."""
        return PlaneMaterialWave(
            kind="photon", m=self.rho0 * self.volume / 2, u=self.c * self.e_k, k=self.direction * self.k,
            omega=self.omega, rho0=self.rho0, volume=self.volume, phase=self.phase,
        )


def photon_potentials(m: PhotonMode, x, t=0.0) -> dict:
    """Kinetic ``rho0 c^2 sin^2``, electromagnetic ``rho0 c^2 cos^2`` and their sum."""
    th = m.theta(x, t)
    amp = m.sign * m.phi0
    phi_k = amp * np.sin(th) ** 2
    phi_e = amp * np.cos(th) ** 2
    return {"phi_k": phi_k, "phi_e": phi_e, "phi_total": phi_k + phi_e}


def transversal_fields(m: PhotonMode, x, t=0.0) -> dict:
    """``E = E0 cos(theta) e_t`` and ``B = E0 cos(theta) (e_k x e_t)``."""
    e0 = gaussian_field_amplitude(m.rho0, _units_with_c(m.c))
    cos = e0 * np.cos(m.theta(x, t))[..., None]
    return {"E": cos * m.e_t, "B": cos * np.cross(m.e_k, m.e_t)}


def _units_with_c(c: float) -> UnitSystem:
    u = codata_units()
    if c == u.c:
        return u
    return UnitSystem(e=u.e, m_e=u.m_e, c=c, h=u.h, hbar=u.hbar, source=u.source)


def _transversal_time_derivative(m: PhotonMode, x, t, order: int) -> dict:
    # d^n/dt^n cos(theta) with dtheta/dt = -omega
    e0 = gaussian_field_amplitude(m.rho0, _units_with_c(m.c))
    f = (e0 * (-m.omega) ** order * np.cos(m.theta(x, t) + order * np.pi / 2))[..., None]
    return {"E": f * m.e_t, "B": f * np.cross(m.e_k, m.e_t)}


def photon_em_pair(m: PhotonMode, g: Grid, t: float = 0.0, units: UnitSystem | None = None) -> EMFieldPair:
    """Transversal fields on a grid as an :class:`EMFieldPair` (intrinsic convention)."""
    units = units or codata_units()
    x = g.points()
    f0 = transversal_fields(m, x, t)
    f1 = _transversal_time_derivative(m, x, t, 1)
    f2 = _transversal_time_derivative(m, x, t, 2)
    return EMFieldPair(E=f0["E"], B=f0["B"], sigma_bar=units.sigma_bar_rule(m.rho0 / 2),
                       factor_convention="intrinsic", E_t=f1["E"], B_t=f1["B"], E_tt=f2["E"], B_tt=f2["B"])


def transversal_faraday_residual(m: PhotonMode, g: Grid | None = None, t: float = 0.0, order: int = 2,
                                 ladder=DEFAULT_LADDER, n: int = 256):
    """``curl E + (1/c) dB/dt`` for the transversal fields (Gaussian form)."""
    w = m.as_wave()
    g = g or Grid.for_wave(w, n)

    def evaluate(grid):
        x = grid.points()
        curl_e = curl(transversal_fields(m, x, t)["E"], grid, order)
        db_dt = _transversal_time_derivative(m, x, t, 1)["B"] / m.c
        return curl_e + db_dt, db_dt

    return ladder_report(evaluate, g, active_axes(w, g), ladder, identity="curl E + (1/c) dB/dt")


@dataclass(frozen=True, eq=False)
class PhotonPacket:
    """Superposition of modes with momentum amplitudes ``p0`` and potential amplitudes ``phi0``.

    Defaults are ``p0 = rho0 c`` and ``phi0 = rho0 c^2``. Every mode must satisfy
    ``p0 |k| - (omega / c^2) phi0 = 0``; a violation raises ``ValueError``.
    """

    modes: Sequence[PhotonMode]
    p0: Sequence[float] | None = None
    phi0: Sequence[float] | None = None
    rtol: float = 1e-12

    def __post_init__(self):
        modes = tuple(self.modes)
        if not modes:
            raise ValueError("a packet needs at least one mode")
        p0 = tuple(float(v) for v in self.p0) if self.p0 is not None else tuple(m.rho0 * m.c for m in modes)
        phi0 = tuple(float(v) for v in self.phi0) if self.phi0 is not None else tuple(m.phi0 for m in modes)
        if not len(p0) == len(phi0) == len(modes):
            raise ValueError("one amplitude pair per mode is required")
        for i, (m, p, f) in enumerate(zip(modes, p0, phi0)):
            lhs = p * m.wavenumber
            gap = lhs - m.omega / m.c**2 * f
            if abs(gap) > self.rtol * max(abs(lhs), abs(m.omega / m.c**2 * f), np.finfo(float).tiny):
                raise ValueError(f"mode {i} violates p0 |k| = (omega / c^2) phi0")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "phi0", phi0)

    def momentum(self, x, t=0.0):
        total = 0.0
        for m, p in zip(self.modes, self.p0):
            total = total + (p * np.sin(m.theta(x, t)) ** 2)[..., None] * m.e_k
        return total

    def potential(self, x, t=0.0):
        return sum(f * np.cos(m.theta(x, t)) ** 2 for m, f in zip(self.modes, self.phi0))

    def potential_dt(self, x, t=0.0):
        return sum(f * m.omega * np.sin(2 * m.theta(x, t)) for m, f in zip(self.modes, self.phi0))

    def gauge_residual(self, g: Grid, t: float = 0.0, order: int = 2):
        """``div p - (1/c^2) d(phi)/dt`` on a grid; the scale is ``||div p||``."""
        x = g.points()
        c = self.modes[0].c
        div_p = divergence(self.momentum(x, t), g, order)
        return make_report(div_p - self.potential_dt(x, t) / c**2, div_p, g)


@dataclass(frozen=True)
class TransferEvent:
    """Energy handed over by a photon during ``periods`` oscillation periods.

    ``volume_fraction`` is the share of the photon volume taking part.
    """

    nu: float
    volume_fraction: float = 1.0
    periods: float = 1.0
    h: float = field(default_factory=lambda: codata_units().h)

    def __post_init__(self):
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise ValueError("frequency must be positive")
        if not 0 < self.volume_fraction <= 1:
            raise ValueError("volume_fraction must be in (0, 1]")
        if not self.periods > 0:
            raise ValueError("periods must be positive")

    @property
    def duration(self) -> float:
        return self.periods / self.nu

    @property
    def rate(self) -> float:
        return self.h * self.nu**2 * self.volume_fraction

    @property
    def energy(self) -> float:
        return self.h * self.nu * self.volume_fraction * self.periods

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "volume_fraction": self.volume_fraction,
            "periods": self.periods,
            "duration": self.duration,
            "rate": self.rate,
            "energy": self.energy,
            "h": self.h,
        }


def transfer_rate(ev: TransferEvent) -> dict:
    return {"rate": ev.rate, "energy": ev.energy, "duration": ev.duration}


def charge_quantum(u: UnitSystem | None = None) -> dict:
    """Charge estimate from the field constant: ``e = sqrt(beta_f)``.

    The flow of the vector field through a unit sphere in unit time gives
    ``A_L = (4 pi / 3) beta_f / e``; equating it with ``(4 pi / 3) e`` yields
    ``beta_f = e^2``. The chain is evaluated with the numeric value of
    ``beta_f``; its units do not reduce to C^2 in SI, which is flagged.
    """
    u = u or codata_units()
    beta_f = derive_constants(u).beta_f
    e_est = math.sqrt(beta_f)
    a_l = 4 * math.pi / 3 * beta_f / e_est
    return {
        "beta_f": beta_f,
        "e_estimate": e_est,
        "A_L_flow": a_l,
        "A_L_flow_si_e": 4 * math.pi / 3 * beta_f / u.e,
        "chain_residual": (4 * math.pi / 3 * e_est - a_l) / a_l,
        "relative_to_e": e_est / u.e - 1.0,
        "dimensional_note": "beta_f carries units A m^2 kg^1/2, not C^2; e = sqrt(beta_f) is a numeric identification",
    }


def _phi(m: PhotonMode, x, t, component: str):
    return photon_potentials(m, x, t)[component]


def _phi_dt(m: PhotonMode, x, t, component: str):
    amp = m.sign * m.phi0
    s2 = np.sin(2 * m.theta(x, t))
    if component == "phi_e":
        return amp * m.omega * s2
    if component == "phi_k":
        return -amp * m.omega * s2
    return np.zeros_like(s2)


def structural_balance(p_ph1: PhotonMode, p_ph2: PhotonMode, x=None, t=None, component: str = "phi_e") -> dict:
    """Largest ``|phi1 + phi2|`` and ``|d(phi1 + phi2)/dt|`` over sample points.

    By default the electromagnetic potentials are compared at 257 points
    along one wavelength of the first mode and 16 times in one period.
    """
    if component not in ("phi_e", "phi_k", "phi_total"):
        raise ValueError("component must be phi_e, phi_k or phi_total")
    if x is None:
        s = np.linspace(0.0, 2 * math.pi / p_ph1.wavenumber, 257)
        x = s[:, None] * (p_ph1.k / p_ph1.wavenumber)
    if t is None:
        t = np.linspace(0.0, 2 * math.pi / p_ph1.omega, 16, endpoint=False)
    x = np.asarray(x, dtype=float)
    total = 0.0
    total_dt = 0.0
    scale = 0.0
    for ti in np.atleast_1d(t):
        a = _phi(p_ph1, x, ti, component)
        b = _phi(p_ph2, x, ti, component)
        total = max(total, float(np.max(np.abs(a + b))))
        total_dt = max(total_dt, float(np.max(np.abs(_phi_dt(p_ph1, x, ti, component) + _phi_dt(p_ph2, x, ti, component)))))
        scale = max(scale, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return {"sum": total, "dt": total_dt, "scale": scale}


def source_term(w_el: PlaneMaterialWave, p_ph: PhotonMode, g: Grid, t: float = 0.0, order: int = 2):
    """``u^2 lap p - d2p/dt2 + c^2 lap p_ph`` for an electron wave and a photon mode.

    The scale is ``||u^2 lap p||`` of the electron; ``details['photon_scale']``
    holds ``||c^2 lap p_ph||``.
    """
    x = g.points()
    lap_p = w_el.speed**2 * laplacian(w_el.momentum(x, t), g, order)
    photon = p_ph.c**2 * laplacian(p_ph.momentum(x, t), g, order)
    residual = lap_p - w_el.momentum_dt(x, t, 2) + photon
    return make_report(residual, lap_p, g, photon_scale=l2_norm(photon, g))
