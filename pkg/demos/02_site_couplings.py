"""Dipolar couplings of the two NV qubits to the strip, site by site and
in k space.

Builds the site tables at the resonance field, dresses each qubit, and
shows the mirror relation between the pair at x = -L/4 and x = +L/4.
"""

import numpy as np

from magnv import (MaterialParams, NVParams, StripGeometry,
                   dipolar_site_coefficients, dress_qubit, k_grid,
                   rotated_site_coefficients, solve_resonance, to_k_space)

mat = MaterialParams.yig()
N = 1000
geo = StripGeometry(N=N, L_x=(N - 1) * mat.a, L_y=120e-9, L_z=20e-9)
nv = NVParams.diamond(z_NV=20e-9, x_positions=(-geo.L_x / 4, geo.L_x / 4))
B0 = solve_resonance(nv, mat, geo, nv.x_positions[0])

two_pi = 2 * np.pi
for x in nv.x_positions:
    site = dipolar_site_coefficients(x, nv, mat, geo)
    dress = dress_qubit(site, nv, B0)
    rot = rotated_site_coefficients(site, dress)
    ksp = to_k_space(rot, k_grid(N, mat.a))
    print(f"qubit at x = {x * 1e6:+.4f} um")
    print(f"  d / 2pi      = {site.d / two_pi:12.4f} Hz")
    print(f"  alpha / 2pi  = {dress.alpha / two_pi:12.4f} Hz"
          f"   beta / 2pi = {dress.beta / two_pi:12.4f} Hz")
    print(f"  phi          = {dress.phi:12.6f} rad"
          f"   Omega / 2pi = {dress.Omega / two_pi / 1e9:.6f} GHz")
    print(f"  eta0 / 2pi   = {ksp.eta0 / two_pi:12.4f} Hz"
          f"   zeta0 / 2pi = {ksp.zeta0 / two_pi:12.4f} Hz")
    print(f"  xi0 / 2pi    = {ksp.xi0 / two_pi:12.6f} Hz"
          f"   (band-edge leakage |xi0/eta0| = "
          f"{abs(ksp.xi0 / ksp.eta0):.2e})")

# mirror pair: odd coefficients flip sign, dissipative weights match
s1 = dipolar_site_coefficients(nv.x_positions[0], nv, mat, geo)
s2 = dipolar_site_coefficients(nv.x_positions[1], nv, mat, geo)
d1, d2 = dress_qubit(s1, nv, B0), dress_qubit(s2, nv, B0)
print(f"\nmirror check: alpha2/alpha1 = {d2.alpha / d1.alpha:+.6f}, "
      f"beta2/beta1 = {d2.beta / d1.beta:+.6f}, "
      f"Omega2/Omega1 = {d2.Omega / d1.Omega:.12f}")
