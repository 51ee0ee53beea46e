"""Physical constants and the derived constants of the material-wave picture.

All arithmetic is SI. The transversal photon fields use Gaussian-style
amplitudes, ``E0 = c * sqrt(4 pi rho0)``; that conversion lives only in
:func:`gaussian_field_amplitude`.

Sources for the fixed table returned by :func:`codata_units`:

* ``e``, ``m_e``, ``c``: CODATA 2018 recommended values (NIST, 2019).
  ``e`` and ``c`` are exact in the revised SI.
* ``hbar``: 1.054588e-34 J s, the older CODATA value the Planck-constant
  estimate is compared against. ``h`` is defined as ``2 pi hbar``.

:func:`modern_units` returns a fully CODATA 2018 table for comparison.

Worked example of the Gaussian amplitude: a photon mass density of
1 kg/m^3 gives ``E0 = 299792458 * sqrt(4 pi) = 1.0627e9`` in the field
convention where ``(E^2 + B^2) / (8 pi)`` is an energy density in J/m^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "UnitSystem",
    "DerivedConstants",
    "codata_units",
    "modern_units",
    "derive_constants",
    "gaussian_field_amplitude",
    "constants_table",
]

# CODATA 2018
E_CHARGE = 1.602176634e-19
M_ELECTRON = 9.1093837015e-31
C_LIGHT = 299792458.0
H_PLANCK_2018 = 6.62607015e-34
# older CODATA value used as the comparison reference for the hbar estimate
HBAR_REFERENCE = 1.054588e-34


@dataclass(frozen=True)
class UnitSystem:
    """Fixed table of constants (SI).

    ``sigma_bar_rule`` maps a mean mass density to the charge density
    ``(e / m_e) * rho_bar``.
    """

    e: float
    m_e: float
    c: float
    h: float
    hbar: float
    source: str = ""

    def __post_init__(self):
        for name in ("e", "m_e", "c", "h", "hbar"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"constant {name} must be positive and finite, got {value!r}")
        if abs(self.h / (2 * math.pi * self.hbar) - 1.0) > 1e-12:
            raise ValueError("hbar must equal h / (2 pi)")

    def sigma_bar_rule(self, rho_bar):
        return (self.e / self.m_e) * rho_bar

    @property
    def charge_to_mass(self) -> float:
        return self.e / self.m_e


@dataclass(frozen=True)
class DerivedConstants:
    beta_f: float
    hbar_estimate: float
    lambda_compton: float


def codata_units() -> UnitSystem:
    """The constants table used throughout the package."""
    return UnitSystem(
        e=E_CHARGE,
        m_e=M_ELECTRON,
        c=C_LIGHT,
        h=2 * math.pi * HBAR_REFERENCE,
        hbar=HBAR_REFERENCE,
        source="CODATA 2018 (e, m_e, c); hbar = 1.054588e-34 J s reference value, h = 2 pi hbar",
    )


def modern_units() -> UnitSystem:
    """CODATA 2018 throughout, including ``h``."""
    return UnitSystem(
        e=E_CHARGE,
        m_e=M_ELECTRON,
        c=C_LIGHT,
        h=H_PLANCK_2018,
        hbar=H_PLANCK_2018 / (2 * math.pi),
        source="CODATA 2018",
    )


def derive_constants(u: UnitSystem) -> DerivedConstants:
    """Field constant, Planck-constant estimate and Compton wavelength.

    ``beta_f = e hbar sqrt(2 / m_e)``; ``hbar_estimate = e sqrt(m_e / 2)``
    (what ``hbar = beta_f sqrt(m_e / (2 e^2))`` becomes once ``beta_f = e^2``);
    ``lambda_compton = h / (m_e c)``.
    """
    return DerivedConstants(
        beta_f=u.e * u.hbar * math.sqrt(2.0 / u.m_e),
        hbar_estimate=u.e * math.sqrt(u.m_e / 2.0),
        lambda_compton=u.h / (u.m_e * u.c),
    )


def gaussian_field_amplitude(rho0, u: UnitSystem | None = None):
    """Transversal field amplitude ``c * sqrt(4 pi rho0)`` for mass density ``rho0``."""
    u = u or codata_units()
    rho0_arr = np.asarray(rho0, dtype=float)
    if np.any(rho0_arr < 0):
        raise ValueError("mass density must be non-negative")
    out = u.c * np.sqrt(4 * np.pi * rho0_arr)
    return float(out) if out.ndim == 0 else out


def constants_table(u: UnitSystem | None = None) -> dict:
    """Constants and derived constants as ``{key: {value, unit, provenance}}``."""
    u = u or codata_units()
    d = derive_constants(u)
    return {
        "e": {"value": u.e, "unit": "C", "provenance": "CODATA 2018 (exact)"},
        "m_e": {"value": u.m_e, "unit": "kg", "provenance": "CODATA 2018"},
        "c": {"value": u.c, "unit": "m/s", "provenance": "CODATA 2018 (exact)"},
        "h": {"value": u.h, "unit": "J s", "provenance": "h = 2 pi hbar"},
        "hbar": {"value": u.hbar, "unit": "J s", "provenance": "reference value 1.054588e-34 J s"},
        "beta_f": {
            "value": d.beta_f,
            "unit": "A m^2 kg^1/2 (with [A] = kg^1/2 / (m s))",
            "provenance": "beta_f = e hbar sqrt(2 / m_e)",
        },
        "hbar_estimate": {
            "value": d.hbar_estimate,
            "unit": "J s",
            "provenance": "hbar = e sqrt(m_e / 2)",
        },
        "lambda_compton": {
            "value": d.lambda_compton,
            "unit": "m",
            "provenance": "lambda_C = h / (m_e c)",
        },
    }
