"""Uniform periodic grids, central-difference operators and residual reports.

Fields are plain numpy arrays: scalar fields have the grid shape, vector
fields have shape ``grid.shape + (3,)``. Grids have one to three axes;
derivatives along absent axes are zero, so a 1-D grid carries 3-vector
fields that vary along x only.

Residual identities are evaluated with closed-form time derivatives taken
from the wave object and discrete space derivatives, so every residual
measures spatial discretisation error only.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .waves import PlaneMaterialWave

__all__ = [
    "ConfigurationError",
    "Grid",
    "grid1d",
    "grid3d",
    "ScalarField",
    "VectorField",
    "ResidualReport",
    "DEFAULT_LADDER",
    "sample",
    "partial",
    "gradient",
    "divergence",
    "curl",
    "laplacian",
    "l2_norm",
    "make_report",
    "ladder_report",
    "active_axes",
    "check_commensurate",
    "wave_residual",
    "continuity_residual",
    "momentum_balance_residual",
]

DEFAULT_LADDER = (64, 128, 256, 512)
# relative residuals below this are treated as exact (round-off only)
ROUNDOFF = 1e-12
MIN_POINTS = 8


class ConfigurationError(ValueError):
    """Grid and wave do not fit together (e.g. incommensurate domain)."""


@dataclass(frozen=True)
class Grid:
    """Periodic grid with ``n[i]`` points over ``length[i]`` metres per axis."""

    n: tuple
    length: tuple
    dt: float = 0.0

    def __post_init__(self):
        n = tuple(int(v) for v in np.atleast_1d(self.n))
        length = tuple(float(v) for v in np.atleast_1d(self.length))
        if len(length) == 1 and len(n) > 1:
            length = length * len(n)
        if len(n) != len(length) or not 1 <= len(n) <= 3:
            raise ValueError("n and length must have matching sizes between 1 and 3")
        if any(v < MIN_POINTS for v in n):
            raise ValueError(f"need at least {MIN_POINTS} points per axis")
        if any(not (v > 0 and math.isfinite(v)) for v in length):
            raise ValueError("axis lengths must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "length", length)

    @property
    def ndim(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple:
        return self.n

    @property
    def dx(self) -> tuple:
        return tuple(L / n for L, n in zip(self.length, self.n))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.dx))

    @property
    def periodic(self) -> bool:
        return True

    def axis_coords(self, axis: int) -> np.ndarray:
        return np.arange(self.n[axis]) * self.dx[axis]

    def points(self) -> np.ndarray:
        """Sample positions, shape ``shape + (3,)``; absent axes sit at 0."""
        axes = [self.axis_coords(i) for i in range(self.ndim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.zeros(self.shape + (3,))
        for i, m in enumerate(mesh):
            pts[..., i] = m
        return pts

    def refined(self, n: int, axes: Sequence[int] | None = None) -> Grid:
        """Same domain with ``n`` points on ``axes`` (all axes by default)."""
        axes = range(self.ndim) if axes is None else axes
        new_n = list(self.n)
        for i in axes:
            new_n[i] = n
        return replace(self, n=tuple(new_n))

    @classmethod
    def for_wave(cls, w: PlaneMaterialWave, n: int = 256, wavelengths: float = 1, ndim: int | None = None,
                 dt: float = 0.0) -> Grid:
        """Grid spanning a whole number of wave periods along every axis the wave varies on.

        ``wavelengths`` is rounded to the nearest integer (at least 1).
        Axes with no wave-vector component get ``MIN_POINTS`` points.
        """
        count = max(1, int(round(wavelengths)))
        nonzero = [i for i in range(3) if abs(w.k[i]) > 1e-12 * w.wavenumber]
        if ndim is None:
            ndim = max(nonzero) + 1
        ns, lengths = [], []
        for i in range(ndim):
            if i in nonzero:
                ns.append(n)
                lengths.append(count * 2 * math.pi / abs(w.k[i]))
            else:
                ns.append(MIN_POINTS)
                lengths.append(count * w.wavelength)
        return cls(tuple(ns), tuple(lengths), dt)


def grid1d(n: int, length: float, dt: float = 0.0) -> Grid:
    return Grid((n,), (length,), dt)


def grid3d(n, length, dt: float = 0.0) -> Grid:
    n = tuple(np.broadcast_to(np.asarray(n), (3,)).tolist())
    length = tuple(np.broadcast_to(np.asarray(length, dtype=float), (3,)).tolist())
    return Grid(n, length, dt)


def active_axes(w: PlaneMaterialWave, g: Grid) -> tuple:
    return tuple(i for i in range(g.ndim) if abs(w.k[i]) > 1e-12 * w.wavenumber)


def check_commensurate(w: PlaneMaterialWave, g: Grid) -> None:
    """Raise :class:`ConfigurationError` unless every axis holds whole periods."""
    kn = w.wavenumber
    for i in range(3):
        if i >= g.ndim:
            if abs(w.k[i]) > 1e-12 * kn:
                raise ConfigurationError(f"wave varies along axis {i}, which the grid does not have")
            continue
        cycles = w.k[i] * g.length[i] / (2 * math.pi)
        if abs(cycles - round(cycles)) > 1e-8 * max(1.0, abs(cycles)):
            raise ConfigurationError(
                f"axis {i} holds {cycles:.6g} wave periods; the domain must hold a whole number"
            )


# -- fields --------------------------------------------------------------------


def _csv_text(g: Grid, values: np.ndarray, names: list[str]) -> str:
    pts = g.points().reshape(-1, 3)[:, : g.ndim]
    vals = values.reshape(pts.shape[0], -1)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["x", "y", "z"][: g.ndim] + names)
    for p, v in zip(pts, vals):
        writer.writerow([f"{a:.15e}" for a in p] + [f"{b:.15e}" for b in v])
    return buf.getvalue()


@dataclass(frozen=True, eq=False)
class ScalarField:
    grid: Grid
    values: np.ndarray
    time: float = 0.0
    name: str = "value"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.shape:
            raise ValueError(f"values shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", vals)

    def to_csv(self) -> str:
        return _csv_text(self.grid, self.values, [self.name])


@dataclass(frozen=True, eq=False)
class VectorField:
    grid: Grid
    values: np.ndarray
    time: float = 0.0
    name: str = "value"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.shape + (3,):
            raise ValueError(f"values shape {vals.shape} does not match grid {self.grid.shape} + (3,)")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", vals)

    def to_csv(self) -> str:
        return _csv_text(self.grid, self.values, [f"{self.name}_{c}" for c in "xyz"])


def sample(w: PlaneMaterialWave, field: str, g: Grid, t: float = 0.0):
    """Exact samples of ``density``, ``momentum``, ``potential`` or ``psi`` on ``g``."""
    check_commensurate(w, g)
    x = g.points()
    if field == "density":
        return ScalarField(g, w.density(x, t), t, "density")
    if field == "potential":
        return ScalarField(g, w.potential(x, t), t, "potential")
    if field == "psi":
        return ScalarField(g, w.psi(x, t), t, "psi")
    if field == "momentum":
        return VectorField(g, w.momentum(x, t), t, "momentum")
    raise ValueError(f"unknown field {field!r}")


# -- operators -----------------------------------------------------------------

# (shift, weight) pairs of antisymmetric first-derivative stencils
_FIRST = {2: ((1, 1 / 2),), 4: ((1, 2 / 3), (2, -1 / 12))}
# centre weight and symmetric (shift, weight) pairs for second derivatives
_SECOND = {2: (-2.0, ((1, 1.0),)), 4: (-5 / 2, ((1, 4 / 3), (2, -1 / 12)))}


def _values(f):
    return f.values if isinstance(f, (ScalarField, VectorField)) else np.asarray(f, dtype=float)


def partial(f, g: Grid, axis: int, order: int = 2, periodic: bool = True) -> np.ndarray:
    """First derivative along ``axis``.

    ``periodic=False`` uses second-order one-sided differences at the edges
    (exact for quadratics); it exists for static, non-periodic test fields.
    """
    f = _values(f)
    if axis >= g.ndim:
        return np.zeros_like(f)
    dx = g.dx[axis]
    if not periodic:
        return np.gradient(f, dx, axis=axis, edge_order=2)
    if order not in _FIRST:
        raise ValueError("stencil order must be 2 or 4")
    out = np.zeros_like(f)
    for s, c in _FIRST[order]:
        out += c * (np.roll(f, -s, axis=axis) - np.roll(f, s, axis=axis))
    return out / dx


def second_partial(f, g: Grid, axis: int, order: int = 2, periodic: bool = True) -> np.ndarray:
    f = _values(f)
    if axis >= g.ndim:
        return np.zeros_like(f)
    dx = g.dx[axis]
    if not periodic:
        return np.gradient(np.gradient(f, dx, axis=axis, edge_order=2), dx, axis=axis, edge_order=2)
    if order not in _SECOND:
        raise ValueError("stencil order must be 2 or 4")
    centre, pairs = _SECOND[order]
    out = centre * f
    for s, c in pairs:
        out = out + c * (np.roll(f, -s, axis=axis) + np.roll(f, s, axis=axis))
    return out / dx**2


def gradient(f, g: Grid, order: int = 2, periodic: bool = True) -> np.ndarray:
    f = _values(f)
    return np.stack([partial(f, g, i, order, periodic) for i in range(3)], axis=-1)


def divergence(v, g: Grid, order: int = 2, periodic: bool = True) -> np.ndarray:
    v = _values(v)
    return sum(partial(v[..., i], g, i, order, periodic) for i in range(3))


def curl(v, g: Grid, order: int = 2, periodic: bool = True) -> np.ndarray:
    v = _values(v)

    def d(comp, axis):
        return partial(v[..., comp], g, axis, order, periodic)

    return np.stack([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)], axis=-1)


def laplacian(f, g: Grid, order: int = 2, periodic: bool = True) -> np.ndarray:
    """Compact-stencil Laplacian of a scalar or (componentwise) vector field."""
    f = _values(f)
    if f.shape == g.shape + (3,):
        return np.stack([laplacian(f[..., i], g, order, periodic) for i in range(3)], axis=-1)
    return sum(second_partial(f, g, i, order, periodic) for i in range(g.ndim))


# -- residual reports ----------------------------------------------------------


def l2_norm(a, g: Grid) -> float:
    """Discrete L2 norm ``sqrt(sum |a|^2 dV)``; numpy's pairwise summation keeps it order-stable."""
    a = np.asarray(a, dtype=float)
    return float(np.sqrt(np.sum(np.square(a)) * g.cell_volume))


def _relative(l2: float, scale: float) -> float:
    if scale > 0:
        return l2 / scale
    return 0.0 if l2 == 0 else math.inf


@dataclass
class ResidualReport:
    """Norms of a discretised identity.

    ``scale`` is the L2 norm of the dominant term; ``relative = l2 / scale``.
    ``order_estimate`` is the least-squares slope of ``log(relative)`` against
    ``log(dx)`` over ``n_ladder``; NaN when no ladder ran or the residual is
    at round-off level (nothing to converge).
    """

    l2: float
    linf: float
    scale: float
    order_estimate: float = math.nan
    n_ladder: tuple = ()
    relative_ladder: tuple = ()
    details: dict = field(default_factory=dict)

    @property
    def relative(self) -> float:
        return _relative(self.l2, self.scale)

    def to_dict(self) -> dict:
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return None
            return v

        return {
            "l2": clean(self.l2),
            "linf": clean(self.linf),
            "scale": clean(self.scale),
            "relative": clean(self.relative),
            "order_estimate": clean(self.order_estimate),
            "n_ladder": list(self.n_ladder),
            "relative_ladder": [clean(v) for v in self.relative_ladder],
            **({"details": self.details} if self.details else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def make_report(residual, dominant, g: Grid, **details) -> ResidualReport:
    residual = np.asarray(residual, dtype=float)
    return ResidualReport(
        l2=l2_norm(residual, g),
        linf=float(np.max(np.abs(residual))) if residual.size else 0.0,
        scale=l2_norm(dominant, g),
        details=dict(details),
    )


def fit_order(n_ladder, relative_ladder) -> float:
    rel = np.asarray(relative_ladder, dtype=float)
    if len(rel) < 2 or np.any(~np.isfinite(rel)) or np.any(rel <= ROUNDOFF):
        return math.nan
    slope = np.polyfit(np.log(np.asarray(n_ladder, dtype=float)), np.log(rel), 1)[0]
    return float(-slope)


def ladder_report(evaluate: Callable[[Grid], tuple], g: Grid, axes: Sequence[int],
                  ladder: Sequence[int] | None = DEFAULT_LADDER, **details) -> ResidualReport:
    """Report on ``g`` plus an observed order over ``ladder`` (refining ``axes``).

    ``evaluate(grid)`` returns ``(residual, dominant_term)`` arrays.
    """
    residual, dominant = evaluate(g)
    report = make_report(residual, dominant, g, **details)
    if ladder:
        rels = []
        for n in ladder:
            gi = g.refined(n, axes)
            r, d = evaluate(gi)
            rels.append(_relative(l2_norm(r, gi), l2_norm(d, gi)))
        report.n_ladder = tuple(int(n) for n in ladder)
        report.relative_ladder = tuple(rels)
        report.order_estimate = fit_order(ladder, rels)
    return report


# -- wave-equation identities ----------------------------------------------------


def _require_moving(w: PlaneMaterialWave):
    if not w.speed > 0:
        raise ValueError("the wave must move (|u| > 0)")


def _grid_or_default(w, g, n):
    g = g or Grid.for_wave(w, n)
    check_commensurate(w, g)
    return g


def wave_residual(w: PlaneMaterialWave, field: str = "momentum", g: Grid | None = None, t: float = 0.0,
                  order: int = 2, ladder=DEFAULT_LADDER, n: int = 256) -> ResidualReport:
    """``lap f - (1/|u|^2) d2f/dt2`` for ``f`` in {momentum, density, psi}."""
    _require_moving(w)
    g = _grid_or_default(w, g, n)
    u2 = w.speed**2
    if field == "momentum":
        exact, dtt = w.momentum, lambda x: w.momentum_dt(x, t, 2)
    elif field == "density":
        exact, dtt = w.density, lambda x: w.density_dt(x, t, 2)
    elif field == "psi":
        exact, dtt = w.psi, lambda x: w.psi_dt(x, t, 2)
    else:
        raise ValueError(f"unknown field {field!r}")

    def evaluate(grid):
        x = grid.points()
        lap = laplacian(exact(x, t), grid, order)
        return lap - dtt(x) / u2, lap

    return ladder_report(evaluate, g, active_axes(w, g), ladder, field=field, stencil_order=order)


def continuity_residual(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                        ladder=DEFAULT_LADDER, n: int = 256) -> ResidualReport:
    """``div p + d rho/dt``."""
    _require_moving(w)
    g = _grid_or_default(w, g, n)

    def evaluate(grid):
        x = grid.points()
        div_p = divergence(w.momentum(x, t), grid, order)
        return div_p + w.density_dt(x, t, 1), div_p

    return ladder_report(evaluate, g, active_axes(w, g), ladder, stencil_order=order)


def momentum_balance_residual(w: PlaneMaterialWave, g: Grid | None = None, t: float = 0.0, order: int = 2,
                              ladder=DEFAULT_LADDER, n: int = 256) -> ResidualReport:
    """``dp/dt + |u|^2 grad rho``; zero for a free material wave."""
    _require_moving(w)
    g = _grid_or_default(w, g, n)
    u2 = w.speed**2

    def evaluate(grid):
        x = grid.points()
        pressure = u2 * gradient(w.density(x, t), grid, order)
        return w.momentum_dt(x, t, 1) + pressure, pressure

    return ladder_report(evaluate, g, active_axes(w, g), ladder, stencil_order=order)
