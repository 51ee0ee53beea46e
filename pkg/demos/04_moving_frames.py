"""The wave seen from moving frames: density, volume and energy, and the
wave equation with the transformed phase speed."""

from matterwave.relativity import LorentzFrame, boost, transform_wave_quantities, transformed_wave_residual
from matterwave.units import C_LIGHT, M_ELECTRON
from matterwave.waves import make_wave

print("boost(0.6) of (1, 0, 0, 0):", boost(LorentzFrame(0.6), [1.0, 0.0, 0.0, 0.0]))

w = make_wave(M_ELECTRON, 0.6 * C_LIGHT)
print("\nbeta    gamma    phi0'/phi0   V'/V     E'/E   residual")
for beta in (0.1, 0.5, 0.866, 0.99):
    f = LorentzFrame(beta)
    q = transform_wave_quantities(w, f)
    r = transformed_wave_residual(w, f, ladder=None)
    print(f"{beta:<6} {q['gamma']:7.4f}  {q['phi0_ratio']:10.4f}  {q['volume_ratio']:7.4f}  "
          f"{q['energy_ratio']:5.3f}  {r.relative:.2e}")

# a frame with the wrong speed in the operator leaves an order-one residual
wrong = transformed_wave_residual(w, LorentzFrame(0.5), test_frame=LorentzFrame(-0.5), ladder=None)
print(f"\nmismatched frame: relative residual {wrong.relative:.2f}")
