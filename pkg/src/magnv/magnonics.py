"""Magnon dispersion, density of states, and thermal occupation.

Covers the infinite-chain exchange model and the finite YIG strip whose
band-edge density of states is tuned by a transverse electric field via
an effective "electrical length" that thins the strip.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import E_CHARGE, HBAR, KB
from .errors import PhysicsError

# relative cancellation error of (1 - e^{-x})/x exceeds double-precision
# safety below this, so a short Taylor series takes over
_FORM_FACTOR_SWITCH = 1e-4


@dataclass(frozen=True)
class MaterialParams:
    """Magnetic material parameters, SI units with rad/s frequencies."""

    J: float          # exchange frequency (rad/s)
    s: float          # effective spin per site (dimensionless)
    a: float          # lattice constant (m)
    omega_M: float    # magnetization frequency gamma0*mu0*M_s (rad/s)
    A_ex: float       # exchange stiffness (J/m)
    E_SO: float       # spin-orbit energy scale (J)
    gamma0: float     # material gyromagnetic ratio (rad/(s T))
    g_factor: float   # dimensionless g
    M_s: float        # saturation magnetization (A/m)

    def validate(self):
        for name in ("J", "s", "a", "omega_M", "E_SO"):
            if getattr(self, name) <= 0:
                raise PhysicsError(f"MaterialParams.{name} must be positive")
        return self

    @classmethod
    def from_stiffness(cls, A_ex, a, s, omega_M, E_SO, gamma0, g_factor, M_s):
        """Construct with the exchange frequency derived from the stiffness,
        J = A_ex*a/(hbar*s^2)."""
        J = A_ex * a / (HBAR * s * s)
        return cls(J=J, s=s, a=a, omega_M=omega_M, A_ex=A_ex, E_SO=E_SO,
                   gamma0=gamma0, g_factor=g_factor, M_s=M_s).validate()

    @classmethod
    def yig(cls):
        """Yttrium iron garnet at the parameter set used throughout:
        J/2pi = 33.42 GHz, s = 14.2, a = 12.376 Angstrom, mu0*M_s = 175 mT,
        A_ex = 3.7 pJ/m, E_SO = 19 eV, gamma0/2pi = 28.02 GHz/T."""
        gamma0 = 2 * math.pi * 28.02e9
        mu0_Ms = 0.175
        M_s = mu0_Ms / 1.25663706212e-6
        return cls(
            J=2 * math.pi * 33.42e9,
            s=14.2,
            a=12.376e-10,
            omega_M=gamma0 * mu0_Ms,
            A_ex=3.7e-12,
            E_SO=19 * E_CHARGE,
            gamma0=gamma0,
            g_factor=2.0,
            M_s=M_s,
        ).validate()


@dataclass(frozen=True)
class StripGeometry:
    """Finite strip: N sites along x, cross-section L_y x L_z."""

    N: int            # site count, even
    L_x: float        # length (m)
    L_y: float        # width (m)
    L_z: float        # thickness (m)
    n_y: int = 0      # transverse mode index

    def validate(self, mat=None):
        if self.N % 2 != 0 or self.N < 2:
            raise PhysicsError("StripGeometry.N must be a positive even integer")
        if not (self.L_z < self.L_y < self.L_x):
            raise PhysicsError("StripGeometry requires L_z < L_y < L_x")
        if self.n_y < 0:
            raise PhysicsError("StripGeometry.n_y must be non-negative")
        if mat is not None:
            # the chain picture identifies the strip length with (N-1)a
            expected = (self.N - 1) * mat.a
            if abs(self.L_x - expected) > 0.01 * expected:
                raise PhysicsError(
                    "StripGeometry.L_x inconsistent with (N-1)*a beyond 1%")
        return self


@dataclass(frozen=True)
class FieldConfig:
    """External fields: bias B0 (z), coherence-injection B1 (-y), electric E."""

    B0: float         # T
    B1: float = 0.0   # T
    E: float = 0.0    # V/m

    def validate(self):
        if self.B0 <= 0:
            raise PhysicsError("FieldConfig.B0 must be positive")
        if not (0.0 <= self.B1 <= 0.5):
            raise PhysicsError(
                "FieldConfig.B1 outside [0, 0.5] T saturation bound")
        if self.E < 0:
            raise PhysicsError("FieldConfig.E must be non-negative")
        return self


def k_grid(N, a):
    """Discrete chain wavenumbers k_m = 2*pi*m/(N*a), m in {-N/2,...,N/2-1}.

    Returned in ascending order; the k=0 mode sits at index N//2.
    """
    m = np.arange(-(N // 2), N // 2)
    return 2.0 * math.pi * m / (N * a)


def _check_zone(k, a):
    if np.any(np.abs(np.asarray(k)) * a > math.pi * (1 + 1e-12)):
        raise PhysicsError("wavenumber outside the first Brillouin zone")


def chain_dispersion(k, mat, B0):
    """Exchange magnon dispersion of the infinite chain.

    omega_k = omega0 + 4*J*s*(1 - cos(k a)) with omega0 = gamma0*B0.
    Accepts scalar or array k (rad/m); returns rad/s.
    """
    _check_zone(k, mat.a)
    omega0 = mat.gamma0 * B0
    return omega0 + 4.0 * mat.J * mat.s * (1.0 - np.cos(np.asarray(k) * mat.a))


def electrical_length(E, mat):
    """Effective thickness reduction L_E = 4*gamma0*A_ex*|e|*E/(omega_M*M_s*E_SO)."""
    if E < 0:
        raise PhysicsError("electric field must be non-negative")
    return 4.0 * mat.gamma0 * mat.A_ex * E_CHARGE * E / (
        mat.omega_M * mat.M_s * mat.E_SO)


def _thickness_form_factor(x):
    """1 - (1 - e^{-x})/x, series-switched near x = 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _FORM_FACTOR_SWITCH
    xs = np.where(small, 1.0, x)
    exact = 1.0 + np.expm1(-xs) / xs
    taylor = x / 2 - x**2 / 6 + x**3 / 24 - x**4 / 120
    return np.where(small, taylor, exact)


def strip_dispersion(k, n_y, mat, geo, fields):
    """Finite-strip magnon dispersion under electric-field tuning.

    omega_n(k) = sqrt(omega_an * omega_bn) - v_E*k with
      omega_an = omega0 + 2*J*s*a^2*k_n^2,
      omega_bn = omega_an + omega_M*(1 - (1-e^{-k_n L_z})/(k_n L_z)),
      k_n = sqrt(k^2 + (n_y*pi/L_y)^2),  v_E = omega_M * L_E.

    The linear -v_E*k term makes the dispersion asymmetric for E > 0.
    """
    _check_zone(k, mat.a)
    k = np.asarray(k, dtype=float)
    omega0 = mat.gamma0 * fields.B0
    k_n = np.sqrt(k * k + (n_y * math.pi / geo.L_y) ** 2)
    omega_an = omega0 + 2.0 * mat.J * mat.s * mat.a**2 * k_n**2
    omega_bn = omega_an + mat.omega_M * _thickness_form_factor(k_n * geo.L_z)
    v_E = mat.omega_M * electrical_length(fields.E, mat)
    return np.sqrt(omega_an * omega_bn) - v_E * k


def strip_dos_band_edge(mat, geo, fields):
    """Band-edge density of states D0 = 8*L_x/(omega_M*(L_z - L_E)) in s.

    Diverges as the electrical length approaches the strip thickness;
    tuning past it is unphysical and raises.
    """
    L_E = electrical_length(fields.E, mat)
    if geo.L_z <= L_E:
        raise PhysicsError(
            "electric field tuned past the band edge (L_z <= L_E)")
    return 8.0 * geo.L_x / (mat.omega_M * (geo.L_z - L_E))


def chain_dos(omega, mat, B0, N, approx=False):
    """Chain magnon density of states at angular frequency omega.

    Exact per-unit-length form:
      (4/a) / (sqrt(omega - omega0) * sqrt(8*J*s - omega + omega0)).
    With approx=True, the long-wavelength form for the whole chain:
      (2*N/sqrt(2*J*s)) / sqrt(omega - omega0).
    Valid only inside the band omega0 < omega < omega0 + 8*J*s.
    """
    omega0 = mat.gamma0 * B0
    band = 8.0 * mat.J * mat.s
    if not (omega0 < omega < omega0 + band):
        raise PhysicsError("frequency outside the magnon band")
    if approx:
        return (2.0 * N / math.sqrt(2.0 * mat.J * mat.s)) / math.sqrt(omega - omega0)
    return (4.0 / mat.a) / (
        math.sqrt(omega - omega0) * math.sqrt(band - (omega - omega0)))


def thermal_occupation(omega, T):
    """Bose-Einstein occupation 1/(e^{hbar*omega/k_B T} - 1); exactly 0 at T = 0."""
    if omega <= 0:
        raise PhysicsError("thermal_occupation requires omega > 0")
    if T < 0:
        raise PhysicsError("temperature must be non-negative")
    if T == 0.0:
        return 0.0
    x = HBAR * omega / (KB * T)
    if x > 700.0:
        # 1/(e^x - 1) ~ e^{-x}; avoids overflow, underflows cleanly to 0
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def occupation_temperature(omega, nbar):
    """Temperature at which thermal_occupation(omega, T) equals nbar.

    Used to report the validity bound of the two-level truncation
    (occupation of the upper NV transition below a tolerated nbar).
    """
    if omega <= 0 or nbar <= 0:
        raise PhysicsError("occupation_temperature requires omega, nbar > 0")
    return HBAR * omega / (KB * math.log1p(1.0 / nbar))
