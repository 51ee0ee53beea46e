"""Lorentz boosts along x and the transformation of material-wave quantities.

Densities scale with ``gamma`` and particle volumes with ``1/gamma``, so the
total intrinsic potential grows while the integrated energy stays fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import DEFAULT_LADDER, Grid, ResidualReport, active_axes, ladder_report, laplacian
from .units import C_LIGHT, UnitSystem, codata_units
from .waves import PlaneMaterialWave, make_wave

__all__ = [
    "LorentzFrame",
    "MINKOWSKI",
    "boost",
    "velocity_transform",
    "primed_operator_scale",
    "transform_wave_quantities",
    "transformed_wave_residual",
]

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class LorentzFrame:
    """Frame moving with velocity ``beta c`` along x."""

    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and abs(self.beta) < 1):
            raise ValueError(f"|beta| must be < 1, got {self.beta!r}")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta**2)

    @property
    def matrix(self) -> np.ndarray:
        g, bg = self.gamma, self.beta * self.gamma
        return np.array([
            [g, -bg, 0.0, 0.0],
            [-bg, g, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])

    def compose(self, other: LorentzFrame) -> LorentzFrame:
        """Boost by ``self`` followed by ``other``."""
        return LorentzFrame((self.beta + other.beta) / (1.0 + self.beta * other.beta))

    def velocity(self, c: float = C_LIGHT) -> float:
        return self.beta * c


def boost(frame: LorentzFrame, event) -> np.ndarray:
    """Apply the boost to ``(ct, x, y, z)`` events (shape ``(..., 4)``)."""
    event = np.asarray(event, dtype=float)
    if event.shape[-1] != 4:
        raise ValueError("events must be 4-vectors (ct, x, y, z)")
    return event @ frame.matrix.T


def velocity_transform(u_x, frame: LorentzFrame, c: float = C_LIGHT):
    """``(u - V) / (1 - u V / c^2)``; light speed maps to itself."""
    v = frame.beta * c
    u_x = np.asarray(u_x, dtype=float)
    if np.any(np.abs(u_x) > c * (1 + 1e-15)):
        raise ValueError("|u_x| must not exceed c")
    out = (u_x - v) / (1.0 - u_x * v / c**2)
    return float(out) if out.ndim == 0 else out


def primed_operator_scale(frame: LorentzFrame) -> float:
    """The common factor ``1 - beta^2`` that multiplies both primed second derivatives."""
    return 1.0 - frame.beta**2


def transform_wave_quantities(w: PlaneMaterialWave, frame: LorentzFrame) -> dict:
    """Density, total potential, volume and energy seen from the moving frame.

    ``rho' = gamma rho``, ``phi0' = gamma phi0``, ``V' = V / gamma`` and
    ``E0' = phi0' V' = E0``.
    """
    g = frame.gamma
    phi0 = w.phi0
    phi0_moving = g * phi0
    volume_moving = w.volume / g
    energy = phi0 * w.volume
    energy_moving = phi0_moving * volume_moving
    return {
        "gamma": g,
        "rho0_moving": g * w.rho0,
        "phi0": phi0,
        "phi0_moving": phi0_moving,
        "volume": w.volume,
        "volume_moving": volume_moving,
        "energy": energy,
        "energy_moving": energy_moving,
        "phi0_ratio": phi0_moving / phi0 if phi0 else g,
        "volume_ratio": volume_moving / w.volume,
        "energy_ratio": energy_moving / energy if energy else 1.0,
    }


def transformed_wave_residual(w: PlaneMaterialWave, frame: LorentzFrame, g: Grid | None = None,
                              t: float = 0.0, order: int = 2, field: str = "momentum",
                              test_frame: LorentzFrame | None = None, units: UnitSystem | None = None,
                              ladder=DEFAULT_LADDER, n: int = 256) -> ResidualReport:
    """Wave equation for the boosted wave with phase speed ``u'_x``.

    The wave seen from ``frame`` has velocity ``u'_x`` from
    :func:`velocity_transform`, density ``gamma rho`` and volume ``V / gamma``.
    The residual ``(1 - beta^2)(lap f - (1/u'^2) d2f/dt2)`` uses the speed
    obtained from ``test_frame`` (default: the same frame), so a mismatched
    frame serves as a negative control. The scale is ``(1 - beta^2)||lap f||``.
    """
    units = units or codata_units()
    if np.any(w.u[1:] != 0):
        raise ValueError("transformed_wave_residual needs motion along x")
    if field not in ("momentum", "density"):
        raise ValueError("field must be 'momentum' or 'density'")
    u_prime = velocity_transform(w.u[0], frame, units.c)
    if u_prime == 0:
        raise ValueError("the wave is at rest in the moving frame")
    u_test = velocity_transform(w.u[0], test_frame or frame, units.c)
    w_prime = make_wave(w.m, u_prime, volume=w.volume / frame.gamma, units=units, kind=w.kind, phase=w.phase)
    g = g or Grid.for_wave(w_prime, n)
    scale = primed_operator_scale(frame)

    def evaluate(grid):
        x = grid.points()
        if field == "momentum":
            f, f_tt = w_prime.momentum(x, t), w_prime.momentum_dt(x, t, 2)
        else:
            f, f_tt = w_prime.density(x, t), w_prime.density_dt(x, t, 2)
        lap = scale * laplacian(f, grid, order)
        return lap - scale * f_tt / u_test**2, lap

    return ladder_report(evaluate, g, active_axes(w_prime, g), ladder, u_prime=u_prime, u_test=u_test,
                         rho0_moving=w_prime.rho0, field=field)
