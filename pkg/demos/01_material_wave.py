"""An electron as a material wave: wave numbers, density, energies and the
grid check of the wave equation.

Run with ``python demos/01_material_wave.py``.
"""

import numpy as np

from matterwave import grid as fg
from matterwave.units import M_ELECTRON
from matterwave.waves import energy_split, make_wave

# %% an electron at 1e6 m/s
w = make_wave(M_ELECTRON, 1e6)
print(f"|k|        = {w.wavenumber:.4e} 1/m")
print(f"omega      = {w.omega:.4e} 1/s")
print(f"wavelength = {w.wavelength:.4e} m")
print(f"phase speed omega/|k| = {w.omega / w.wavenumber:.6e} m/s")

# %% density and intrinsic potential over one wavelength
x = np.linspace(0, w.wavelength, 9)[:, None] * np.array([1.0, 0.0, 0.0])
rho = w.density(x)
phi = w.potential(x)
print("\nx/lambda   rho/rho0   phi/phi0   (rho u^2 + phi)/phi0")
for xi, r, p in zip(x[:, 0] / w.wavelength, rho / w.rho0, phi / w.phi0):
    print(f"{xi:8.3f}  {r:9.4f}  {p:9.4f}  {r + p:9.4f}")

# %% energies: kinetic and potential halves add up to hbar omega
e = energy_split(w)
print(f"\nW_K = {e.w_kinetic:.4e} J, W_P = {e.w_potential:.4e} J, W_T = {e.w_total:.4e} J")

# %% the wave equation on a periodic grid converges at second order
r = fg.wave_residual(w)
print("\nn      relative residual")
for n, rel in zip(r.n_ladder, r.relative_ladder):
    print(f"{n:<6} {rel:.3e}")
print(f"observed order {r.order_estimate:.3f}")

# a wave with the wrong frequency does not satisfy it at any resolution
bad = fg.wave_residual(w.with_omega(0.5 * w.omega))
print(f"broken dispersion: relative residual {bad.relative:.2f}")
