"""Schrödinger-operator checks, the moving-frame potential and the
uncertainty product of a material wave (one-dimensional evaluation)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import DEFAULT_LADDER, Grid, active_axes, check_commensurate, laplacian, ladder_report, make_report
from .units import UnitSystem, codata_units
from .waves import PlaneMaterialWave

__all__ = [
    "SchrodingerSetup",
    "UncertaintyResult",
    "constant_potential",
    "step_potential",
    "harmonic_potential",
    "kinetic_operator_check",
    "schrodinger_residual",
    "moving_frame_potential",
    "uncertainty_product",
]


def constant_potential(v0: float) -> Callable:
    return lambda x: np.full(np.shape(x), float(v0))


def step_potential(v0: float, x0: float = 0.0) -> Callable:
    """``v0`` for ``x >= x0``, zero below."""
    return lambda x: np.where(np.asarray(x) >= x0, float(v0), 0.0)


def harmonic_potential(stiffness: float, x0: float = 0.0) -> Callable:
    return lambda x: 0.5 * stiffness * (np.asarray(x) - x0) ** 2


@dataclass(frozen=True)
class SchrodingerSetup:
    """Particle of mass ``m`` in potential ``V(x)`` (J per particle) with total energy ``W_total``."""

    m: float
    V: Callable
    W_total: float
    frame_velocity: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class UncertaintyResult:
    k: float
    delta_k: float
    delta_x: float
    product_kx: float
    product_px: float
    corrected: float
    potential_spread: float
    relation: str = ">="

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "delta_k": self.delta_k,
            "delta_x": self.delta_x,
            "product_kx": self.product_kx,
            "product_px": self.product_px,
            "corrected": self.corrected,
            "potential_spread": self.potential_spread,
            "relation": self.relation,
        }


def kinetic_operator_check(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                           units: UnitSystem | None = None, ladder=DEFAULT_LADDER, n: int = 256):
    """``(-hbar^2 / 2m) lap psi - (m/2)|u|^2 psi`` on the real wave function.

    ``details`` carries the analytic eigenvalue ``m |u|^2 / 2`` and the
    discrete Rayleigh quotient of the kinetic operator on the grid.
    """
    units = units or codata_units()
    g = g or Grid.for_wave(w, n)
    check_commensurate(w, g)
    coeff = units.hbar**2 / (2 * w.m)
    eigenvalue = 0.5 * w.m * w.speed**2

    def evaluate(grid):
        psi = w.psi(grid.points(), t)
        kinetic = -coeff * laplacian(psi, grid, order)
        return kinetic - eigenvalue * psi, eigenvalue * psi

    report = ladder_report(evaluate, g, active_axes(w, g), ladder)
    psi = w.psi(g.points(), t)
    kinetic = -coeff * laplacian(psi, g, order)
    norm = float(np.sum(psi * psi))
    report.details = {
        "eigenvalue": eigenvalue,
        "eigenvalue_discrete": float(np.sum(psi * kinetic)) / norm if norm > 0 else math.nan,
        "half_hbar_omega": 0.5 * units.hbar * w.omega,
        "stencil_order": order,
    }
    return report


def schrodinger_residual(s: SchrodingerSetup, psi, g: Grid, order: int = 2, mask=None,
                         units: UnitSystem | None = None):
    """``(-hbar^2/2m) lap psi + V psi - W psi`` on a 1-D grid.

    ``mask`` selects the points that enter the norms, e.g. to stay away from
    potential discontinuities. The scale is ``||W psi||``.
    """
    units = units or codata_units()
    psi = np.asarray(psi, dtype=float)
    x = g.points()[..., 0]
    v = np.asarray(s.V(x), dtype=float)
    kinetic = -(units.hbar**2 / (2 * s.m)) * laplacian(psi, g, order)
    residual = kinetic + v * psi - s.W_total * psi
    dominant = s.W_total * psi
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        residual = np.where(mask, residual, 0.0)
        dominant = np.where(mask, dominant, 0.0)
    return make_report(residual, dominant, g, stencil_order=order)


def moving_frame_potential(s: SchrodingerSetup, t: float) -> Callable:
    """``V(r' + u t)``: the external potential seen from a frame moving at ``frame_velocity``."""
    shift = s.frame_velocity * t
    return lambda r: s.V(np.asarray(r) + shift)


def uncertainty_product(w: PlaneMaterialWave, units: UnitSystem | None = None) -> UncertaintyResult:
    """Minimum error of ``k`` and ``x`` caused by the neglected intrinsic potential.

    The potential spread equals the intrinsic potential ``m u^2``; from
    ``hbar dk = m dV / (hbar k)`` that gives ``dk = k``. With ``dx = lambda / 2``
    the products are ``dk dx = pi`` and ``dp dx = h / 2``; dividing by
    ``2 pi`` gives ``hbar / 2``. The bound values are returned as equalities.
    """
    units = units or codata_units()
    if not w.speed > 0:
        raise ValueError("the wave must move (|u| > 0)")
    k = w.wavenumber
    spread = w.m * w.speed**2
    delta_k = w.m * spread / (units.hbar**2 * k)
    delta_x = w.wavelength / 2
    product_kx = delta_k * delta_x
    product_px = units.hbar * product_kx
    return UncertaintyResult(
        k=k,
        delta_k=delta_k,
        delta_x=delta_x,
        product_kx=product_kx,
        product_px=product_px,
        corrected=product_px / (2 * math.pi),
        potential_spread=spread,
    )
