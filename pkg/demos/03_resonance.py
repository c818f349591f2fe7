"""Self-consistent resonance between the dressed qubit and the magnon
band edge.

The dipolar beta shift makes the dressed frequency depend on the field
that also sets the band edge, so the matching condition is implicit.
Solves it for a few NV heights and checks the closure of the gap.
"""

import numpy as np

from magnv import (MaterialParams, NVParams, StripGeometry, dress_at_field,
                   solve_resonance)

mat = MaterialParams.yig()
N = 1000
geo = StripGeometry(N=N, L_x=(N - 1) * mat.a, L_y=120e-9, L_z=20e-9)

print("  z_NV [nm]    B0 [mT]     Omega/2pi [GHz]   gap/2pi [Hz]")
for z in (5e-9, 10e-9, 20e-9):
    nv = NVParams.diamond(z_NV=z, x_positions=(-geo.L_x / 4, geo.L_x / 4))
    B0 = solve_resonance(nv, mat, geo, nv.x_positions[0])
    _, dress = dress_at_field(nv.x_positions[0], nv, mat, geo, B0)
    gap = dress.Omega - mat.gamma0 * B0
    print(f"  {z * 1e9:8.1f}    {B0 * 1e3:.5f}"
          f"    {dress.Omega / 2e9 / np.pi:.8f}    {gap / 2 / np.pi:+.2e}")

# far from the strip the dipolar shift vanishes and the condition
# reduces to D_zfs = (gamma_NV + gamma0) B0
nv_far = NVParams.diamond(z_NV=0.1, x_positions=(-geo.L_x / 4, geo.L_x / 4))
B0_far = solve_resonance(nv_far, mat, geo, nv_far.x_positions[0])
B0_bare = nv_far.D_zfs / (nv_far.gamma_NV + mat.gamma0)
print(f"\nno-dipole limit: B0 = {B0_far * 1e3:.6f} mT, "
      f"bare crossing at {B0_bare * 1e3:.6f} mT")
