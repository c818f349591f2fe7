"""Spin-wave dispersion of the YIG strip and electrical tuning of the
band-edge density of states.

Prints the chain and strip bands at the resonance bias field, then walks
the gate field E toward the group-velocity cancellation point where the
band-edge DOS diverges.
"""

import numpy as np

from magnv import (FieldConfig, MaterialParams, NVParams, StripGeometry,
                   PhysicsError, chain_dispersion, electrical_length, k_grid,
                   solve_resonance, strip_dispersion, strip_dos_band_edge)

mat = MaterialParams.yig()
N = 1000
geo = StripGeometry(N=N, L_x=(N - 1) * mat.a, L_y=120e-9, L_z=20e-9)
nv = NVParams.diamond(z_NV=20e-9, x_positions=(-geo.L_x / 4, geo.L_x / 4))

B0 = solve_resonance(nv, mat, geo, nv.x_positions[0])
print(f"resonance bias field      B0 = {B0 * 1e3:.4f} mT")

k = k_grid(N, mat.a)
fields = FieldConfig(B0=B0, B1=0.0, E=0.0).validate()

w_chain = chain_dispersion(k, mat, B0)
w_strip = strip_dispersion(k, 0, mat, geo, fields)
print(f"chain band      {w_chain.min() / 2e9 / np.pi:10.4f} .. "
      f"{w_chain.max() / 2e9 / np.pi:.4f} GHz")
print(f"strip band      {w_strip.min() / 2e9 / np.pi:10.4f} .. "
      f"{w_strip.max() / 2e9 / np.pi:.4f} GHz")
print(f"band edge omega(k=0) / 2pi = {w_strip[N // 2] / 2e9 / np.pi:.6f} GHz"
      f"  (gamma0*B0 / 2pi = {mat.gamma0 * B0 / 2e9 / np.pi:.6f} GHz)")

# the gate field shifts the dispersion linearly in k; D0 grows as the
# drift velocity eats the band-edge group velocity
print("\n  E [V/nm]    L_E [nm]      D0 [s]")
for E in (0.0, 0.2, 0.4, 0.6, 0.6257):
    f = FieldConfig(B0=B0, B1=0.0, E=E * 1e9).validate()
    D0 = strip_dos_band_edge(mat, geo, f)
    print(f"    {E:6.4f}    {electrical_length(E * 1e9, mat) * 1e9:8.4f}"
          f"    {D0:.6e}")

try:
    f = FieldConfig(B0=B0, B1=0.0, E=0.65e9).validate()
    strip_dos_band_edge(mat, geo, f)
except PhysicsError as exc:
    print(f"\nE = 0.65 V/nm is past the critical point: {exc}")
