"""Electric and magnetic fields built from the momentum density of a wave.

A freely moving wave carries no electric field, the Maxwell-form identities
hold on the grid, and a rotating charge distribution is force free.
"""

import numpy as np

from matterwave import electrodynamics as ed
from matterwave.units import M_ELECTRON
from matterwave.waves import make_wave

w = make_wave(M_ELECTRON, [6e5, 8e5, 0.0])

# %% the two terms of sigma E cancel for uniform motion
r = ed.free_efield_residual(w, ladder=(32, 64, 128))
print(f"free E relative residual {r.relative:.2e}, order {r.order_estimate:.2f}")

# %% Faraday, vacuum Ampere and div B
for name, rep in ed.maxwell_residuals(w, ladder=(32, 64, 128)).items():
    print(f"{name:<14} relative {rep.relative:.2e}  order {rep.order_estimate:.2f}")

# %% a rotating state: B from the angular velocity and from the curl of u
rot = ed.RotationState([0.0, 0.0, 1e3], [0.2, 0.0, 0.0], rho=1.0)
print("\nB (external)  =", ed.bfield_from_rotation(rot))
print("B (intrinsic) =", ed.bfield_from_rotation(rot, "intrinsic"))
forces = ed.lorentz_force_balance(rot)
print("F_L + F_C     =", forces["F_net"])

# %% round trip: velocity field of an orbit in B0, then back to B0
print("\nrecovered B from orbit:", ed.orbit_field_roundtrip(0.25, u0=1e3))
