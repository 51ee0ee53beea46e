"""Numerical laboratory for real-valued material waves with complementary
intrinsic potentials: residual checks of their wave, continuity and
Maxwell-form identities, and the derived constants and scattering formulas."""

__version__ = "0.1.0"

from .units import UnitSystem, codata_units, derive_constants, modern_units  # noqa: E402
from .waves import PlaneMaterialWave, energy_split, make_photon_wave, make_wave  # noqa: E402
from .grid import Grid, ResidualReport  # noqa: E402

__all__ = [
    "__version__",
    "UnitSystem",
    "codata_units",
    "modern_units",
    "derive_constants",
    "PlaneMaterialWave",
    "make_wave",
    "make_photon_wave",
    "energy_split",
    "Grid",
    "ResidualReport",
]
