"""Electron-photon interactions: polarization shifts, spin, Compton
scattering and a toy pair-correlation experiment."""

import math

import numpy as np

from matterwave.interactions import (
    EPRSampler, compton_shift, epr_sample, polarization_mc, spin_assign, spin_energy_identity,
)

# %% random relative polarization: mean shift (2/pi) W0
mc = polarization_mc(1.0, 1.0, n=1_000_000, seed=1)
print(f"mean |dW|/W0 = {mc['mean_abs_delta_W']:.5f}  (2/pi = {2 / math.pi:.5f})")

# %% spin from the rotation field
for kind in ("boson", "fermion"):
    a = spin_assign(kind)
    out = spin_energy_identity(a, 1e15)
    print(f"{kind:<8} s = {a.s:.4e}, g = {a.g}, g s = {out['g_s']:.4e}, W/W_expected = {out['ratio']:.12f}")

# %% Compton shift at 90 degrees, for scattered wavelengths over three decades
for lam in (1e-12, 1e-11, 1e-10, 1e-9):
    c = compton_shift(lam, math.pi / 2)
    print(f"lambda_s {lam:.0e}: delta {c['delta_lambda']:.6e} m, first-order Doppler / lambda_C {c['chain_ratio']:.3f}")

# %% pair correlations: perfect for a point detector, gone for a full wavelength
lam = 8e-7
print("\nwindow/lambda   corr      definite")
for frac in np.linspace(0.0, 1.0, 6):
    s = EPRSampler(lam, 2 * math.pi * 3e8 / lam, max(frac, 1e-9) * lam, rng_seed=7)
    out = epr_sample(s, 100_000, frac * lam, frac * lam)
    print(f"{frac:12.1f}  {out['corr']:8.4f}  {out['valid_fraction'] == 1.0}")
