"""Physical constants (CODATA 2018) and unit conversion helpers.

All internal quantities are SI with angular frequencies in rad/s.
Conversions to/from the common laboratory units (GHz, mT, nm, ...)
happen only at the configuration and output boundaries.
"""

import math

# CODATA 2018 exact / recommended values
HBAR = 1.054571817e-34        # J s
KB = 1.380649e-23             # J / K
MU0 = 1.25663706212e-6        # N / A^2
MU_B = 9.2740100783e-24       # J / T
E_CHARGE = 1.602176634e-19    # C

TWO_PI = 2.0 * math.pi


def rad_per_s_from_ghz(f):
    """Angular frequency in rad/s from an ordinary frequency in GHz."""
    return TWO_PI * 1e9 * f


def ghz_from_rad_per_s(w):
    """Ordinary frequency in GHz from an angular frequency in rad/s."""
    return w / (TWO_PI * 1e9)


def gyromagnetic_rad_per_s_per_t(g_factor):
    """Gyromagnetic ratio gamma = g mu_B / hbar in rad/(s T)."""
    return g_factor * MU_B / HBAR
