"""Dipolar NV-chain couplings, qubit dressing, and the resonance solver.

Each NV center couples to every chain site through the magnetic dipole
field. Summed over sites, the static parts shift and rotate the qubit;
the rotated per-site coefficients, Fourier-transformed to k-space, are
what the open-system pipeline consumes.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .constants import HBAR, MU0, TWO_PI
from .errors import PhysicsError


@dataclass(frozen=True)
class NVParams:
    """NV center parameters: level structure, placement, private bath times."""

    D_zfs: float              # zero-field splitting (rad/s)
    gamma_NV: float           # gyromagnetic ratio (rad/(s T))
    z_NV: float               # height above the chain (m)
    x_positions: tuple        # two qubit x-coordinates (m)
    T1: float = math.inf      # longitudinal relaxation time (s)
    T2: float = math.inf      # dephasing time (s)

    def validate(self, geo=None):
        if self.z_NV <= 0:
            raise PhysicsError("NVParams.z_NV must be positive")
        if len(self.x_positions) != 2:
            raise PhysicsError("NVParams.x_positions must hold two qubits")
        if self.T1 <= 0 or self.T2 <= 0:
            raise PhysicsError("NVParams.T1 and T2 must be positive")
        if geo is not None:
            half = geo.L_x / 2
            if any(abs(x) > half for x in self.x_positions):
                raise PhysicsError(
                    "NVParams.x_positions outside [-L_x/2, L_x/2]")
        return self

    @classmethod
    def diamond(cls, z_NV, x_positions, T1=math.inf, T2=math.inf):
        """NV ground-state defaults: D/2pi = 2.87 GHz, gamma/2pi = 28.02 GHz/T."""
        return cls(D_zfs=TWO_PI * 2.87e9, gamma_NV=TWO_PI * 28.02e9,
                   z_NV=z_NV, x_positions=tuple(x_positions),
                   T1=T1, T2=T2).validate()


@dataclass(frozen=True)
class SiteCouplings:
    """Per-site coupling table for one qubit.

    A, B, C are the bare dipolar coefficients; xi, zeta, eta the dressed
    ones (None until rotated_site_coefficients fills them). All rad/s.
    """

    j: np.ndarray         # site indices, j=0 excluded
    x: np.ndarray         # site positions (m)
    theta: np.ndarray     # polar angles qubit->site, in (0, pi)
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    d: float              # dipolar frequency at height z_NV (rad/s)
    sqrt_2s: float        # spin-wave amplitude factor sqrt(2s)
    xi: np.ndarray = None
    zeta: np.ndarray = None
    eta: np.ndarray = None


@dataclass(frozen=True)
class QubitDressing:
    """Static dipolar shifts and the basis rotation for one qubit."""

    alpha: float      # sum of A_ij (rad/s)
    beta: float       # sum of 2*B_ij (rad/s)
    phi: float        # rotation angle, in (-pi/4, pi/4]
    omega_i: float    # shifted transition frequency (rad/s)
    Omega: float      # dressed transition frequency (rad/s)


@dataclass(frozen=True)
class KSpaceCouplings:
    """Dressed coupling coefficients on the discrete k-grid (one qubit)."""

    k: np.ndarray
    xi_k: np.ndarray
    zeta_k: np.ndarray
    eta_k: np.ndarray
    xi0: float
    zeta0: float
    eta0: float


def site_indices(N):
    """Chain site indices {-N/2,...,N/2} excluding 0 (N sites)."""
    if N % 2 != 0 or N < 2:
        raise PhysicsError("site count N must be a positive even integer")
    return np.concatenate([np.arange(-(N // 2), 0), np.arange(1, N // 2 + 1)])


def site_positions(N, a):
    """Site coordinates x_j = (j - sign(j)/2)*a over the N chain sites.

    Half-integer offsets: the innermost pair sits at +-a/2 and the full
    span is exactly (N-1)*a.
    """
    j = site_indices(N)
    return (j - np.sign(j) / 2.0) * a


def dipolar_site_coefficients(qubit_x, nv, mat, geo):
    """Bare dipolar coupling of one qubit at (qubit_x, z_NV) to all sites.

    theta_j = atan2(z_NV, qubit_x - x_j) and, with the dipolar frequency
    d = hbar*mu0*gamma_NV*gamma0/(8*pi*z_NV^3),

      A_j = -d*(3*sqrt(2s)/4)*sin^3(theta)*sin(2*theta)
      B_j = -d*(sqrt(2s)/2)*sin^3(theta)*(3*cos^2(theta) - 2)
      C_j = -d*(3*sqrt(2s)/2)*sin^3(theta)*cos^2(theta)
    """
    if nv.z_NV <= 0:
        raise PhysicsError("z_NV must be positive")
    j = site_indices(geo.N)
    x = site_positions(geo.N, mat.a)
    theta = np.arctan2(nv.z_NV, qubit_x - x)
    d = HBAR * MU0 * nv.gamma_NV * mat.gamma0 / (8 * math.pi * nv.z_NV**3)
    sqrt_2s = math.sqrt(2.0 * mat.s)
    sin3 = np.sin(theta) ** 3
    cos_t = np.cos(theta)
    A = -d * (3.0 * sqrt_2s / 4.0) * sin3 * np.sin(2.0 * theta)
    B = -d * (sqrt_2s / 2.0) * sin3 * (3.0 * cos_t**2 - 2.0)
    C = -d * (3.0 * sqrt_2s / 2.0) * sin3 * cos_t**2
    return SiteCouplings(j=j, x=x, theta=theta, A=A, B=B, C=C,
                         d=d, sqrt_2s=sqrt_2s)


def dress_qubit(site, nv, B0):
    """Absorb the static dipolar sums into the qubit frequency and basis.

    alpha = sum A_j, beta = sum 2*B_j shift omega_NV = D_zfs - gamma_NV*B0
    to omega_i = omega_NV - sqrt(2s)*beta and rotate the basis by phi with
    tan(2*phi) = 2*sqrt(2s)*alpha / (sqrt(2s)*beta - omega_NV). The dressed
    frequency is Omega = sqrt(omega_i^2 + 8*s*alpha^2).
    """
    alpha = float(np.sum(site.A))
    beta = float(np.sum(2.0 * site.B))
    omega_NV = nv.D_zfs - nv.gamma_NV * B0
    r2s = site.sqrt_2s
    omega_i = omega_NV - r2s * beta
    # atan2 keeps the beta-crossing finite; tan is pi-periodic, so fold the
    # raw angle into (-pi/2, pi/2] to select phi in (-pi/4, pi/4] with
    # phi -> 0 as alpha -> 0
    two_phi = math.atan2(2.0 * r2s * alpha, r2s * beta - omega_NV)
    if two_phi > math.pi / 2:
        two_phi -= math.pi
    elif two_phi <= -math.pi / 2:
        two_phi += math.pi
    phi = two_phi / 2.0
    # sqrt(8s) = 2*sqrt(2s)
    Omega = math.hypot(omega_i, 2.0 * r2s * alpha)
    return QubitDressing(alpha=alpha, beta=beta, phi=phi,
                         omega_i=omega_i, Omega=Omega)


def rotated_site_coefficients(site, dressing):
    """Dressed per-site coefficients in the rotated qubit basis.

      xi  =  A*cos(2phi) + (B+C)/2*sin(2phi)
      zeta = -A*sin(2phi) + (B+C)/2*cos(2phi) + (B-C)/2
      eta  = -A*sin(2phi) + (B+C)/2*cos(2phi) - (B-C)/2

    At phi = 0 this reduces to (xi, zeta, eta) = (A, B, C).
    """
    c2, s2 = math.cos(2 * dressing.phi), math.sin(2 * dressing.phi)
    sym = 0.5 * (site.B + site.C)
    asym = 0.5 * (site.B - site.C)
    common = -site.A * s2 + sym * c2
    return replace(site,
                   xi=site.A * c2 + sym * s2,
                   zeta=common + asym,
                   eta=common - asym)


def to_k_space(site, k):
    """Unitary DFT of the dressed site coefficients onto the k-grid.

    f_k = (1/sqrt(N)) * sum_j f_j * exp(-i*k*x_j). The k=0 entries are
    plain real sums and are returned separately as scalars.
    """
    if site.xi is None:
        raise PhysicsError("rotate the site coefficients before to_k_space")
    N = site.x.size
    phases = np.exp(-1j * np.outer(k, site.x))
    xi_k = phases @ site.xi / math.sqrt(N)
    zeta_k = phases @ site.zeta / math.sqrt(N)
    eta_k = phases @ site.eta / math.sqrt(N)
    return KSpaceCouplings(
        k=np.asarray(k, dtype=float),
        xi_k=xi_k, zeta_k=zeta_k, eta_k=eta_k,
        xi0=float(np.sum(site.xi)) / math.sqrt(N),
        zeta0=float(np.sum(site.zeta)) / math.sqrt(N),
        eta0=float(np.sum(site.eta)) / math.sqrt(N),
    )


def dress_at_field(qubit_x, nv, mat, geo, B0):
    """Site table and dressing for one qubit at a given bias field."""
    site = dipolar_site_coefficients(qubit_x, nv, mat, geo)
    return site, dress_qubit(site, nv, B0)


def solve_resonance(nv, mat, geo, qubit_x, bracket=(1e-3, 0.2)):
    """Bias field solving the magnon-qubit resonance gamma0*B0 = Omega(B0).

    The site table is field-independent; only the dressing is re-evaluated
    per iterate. Bracketed root finding on [1 mT, 200 mT] by default; the
    returned root satisfies |gamma0*B0 - Omega(B0)| < 2*pi*1 kHz.
    """
    site = dipolar_site_coefficients(qubit_x, nv, mat, geo)

    def gap(B0):
        return mat.gamma0 * B0 - dress_qubit(site, nv, B0).Omega

    lo, hi = bracket
    if gap(lo) * gap(hi) > 0:
        raise PhysicsError(
            "no resonance sign change in the bracket "
            f"[{lo*1e3:.3g} mT, {hi*1e3:.3g} mT]")
    B0 = brentq(gap, lo, hi, xtol=1e-14, rtol=8.9e-16)
    if abs(gap(B0)) >= TWO_PI * 1e3:
        raise PhysicsError("resonance root exceeds the 2*pi*1 kHz tolerance")
    return B0
