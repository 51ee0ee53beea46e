"""Photon modes: complementary potentials, transversal fields and the
quantized transfer of energy."""

import math

import numpy as np

from matterwave.photon import (
    PhotonMode, PhotonPacket, TransferEvent, charge_quantum, photon_potentials, transversal_faraday_residual,
    transversal_fields,
)

m = PhotonMode.from_frequency(5e14, rho0=1.0)
print(f"omega = {m.omega:.4e} 1/s, phi0 = rho0 c^2 = {m.phi0:.4e}")

# %% kinetic and electromagnetic potentials trade places along the wave
x = np.linspace(0, 2 * math.pi / m.wavenumber, 5)[:, None] * np.array([1.0, 0.0, 0.0])
p = photon_potentials(m, x)
f = transversal_fields(m, x)
energy = (np.sum(f["E"] ** 2, -1) + np.sum(f["B"] ** 2, -1)) / (8 * math.pi)
for row in zip(p["phi_k"] / m.phi0, p["phi_e"] / m.phi0, energy / m.phi0):
    print("phi_k %.3f  phi_e %.3f  (E^2+B^2)/8pi %.3f" % row)

# %% transversal Faraday law on a grid
r = transversal_faraday_residual(m)
print(f"\ncurl E + (1/c) dB/dt: relative {r.relative:.2e}, order {r.order_estimate:.2f}")

# %% a packet of three admissible modes
pk = PhotonPacket([PhotonMode.from_frequency(j * 5e14, rho0=1.0 / j) for j in (1, 2, 3)])
print("packet momentum amplitudes:", ["%.3e" % v for v in pk.p0])

# %% energy handed over in one period, and by half a photon
print(f"\nfull photon: {TransferEvent(5e14).energy:.4e} J")
print(f"half volume: {TransferEvent(5e14, volume_fraction=0.5).energy:.4e} J")

q = charge_quantum()
print(f"\nsqrt(beta_f) = {q['e_estimate']:.5e} ({100 * q['relative_to_e']:+.2f} % from e)")
print(q["dimensional_note"])
