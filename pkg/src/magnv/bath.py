"""Displaced thermal magnon bath: coherence profile, correlations, Markov checks.

The static field B1 displaces the thermal magnon state in phase space by
a coherent amplitude per mode. With the B1 spatial profile matched to the
eta-coupling profile, a single dimensionless parameter epsilon controls
everything; alternative profiles would put the Markov approximation at
risk and are not modeled.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicsError


@dataclass(frozen=True)
class BathParams:
    """Resolved bath description entering the master equation."""

    T: float                  # temperature (K)
    nbar0: float              # thermal occupation at the band edge
    epsilon: float            # coherence parameter
    epsilon_k: np.ndarray     # complex per-mode coherent amplitudes
    D0: float                 # band-edge density of states (s)
    kappa: float              # collective dissipation rate (1/s)

    def validate(self):
        if self.nbar0 < 0 or self.epsilon < 0 or self.kappa < 0:
            raise PhysicsError("BathParams rates must be non-negative")
        if self.epsilon_k is not None and self.epsilon_k.size:
            k0 = self.epsilon_k.size // 2
            if abs(self.epsilon_k[k0] - (-1j * self.epsilon)) > 1e-12 * (
                    1 + self.epsilon):
                raise PhysicsError(
                    "epsilon_k at k=0 must equal -i*epsilon")
        return self


@dataclass(frozen=True)
class DisplacedMoments:
    """First and second moments of the displaced thermal magnon state."""

    mean: np.ndarray       # <m_k> = -epsilon_k
    mm: np.ndarray         # <m_k m_q> = epsilon_k epsilon_q
    mdag_m: np.ndarray     # <m_k^dag m_q> = delta_kq nbar + eps_k^* eps_q
    m_mdag: np.ndarray     # <m_k m_q^dag> = delta_kq (nbar+1) + eps_k eps_q^*


@dataclass(frozen=True)
class MarkovReport:
    """Timescale separations backing the Markovian master equation."""

    mode_spacing_ratio: float   # delta-omega/Delta-omega at representative k
    tau_B: float                # bath correlation time (s)
    tau_s: float                # system relaxation time 1/kappa (s)
    markov_ok: bool             # tau_B < 0.01 * tau_s
    spacing_ok: bool            # mode_spacing_ratio << 1
    T_two_level_bound: float    # temperature keeping the upper level dark (K)


def epsilon_from_fields(B1, B0, s, N):
    """Coherence parameter epsilon = (B1/B0)*sqrt(s/(2N))."""
    if B0 <= 0:
        raise PhysicsError("B0 must be positive")
    return (B1 / B0) * math.sqrt(s / (2.0 * N))


def coherence_profile(epsilon, ksp):
    """Per-mode coherent amplitudes epsilon_k = -i*epsilon*eta_k/eta0.

    The B1 profile is tied to the eta-coupling shape, so the k=0 amplitude
    is exactly -i*epsilon and the rest scale with |eta_k|.
    """
    if ksp.eta0 == 0:
        raise PhysicsError("coherence profile undefined for eta0 = 0")
    return -1j * epsilon * ksp.eta_k / ksp.eta0


def displaced_moments(nbar, epsilon_k):
    """Moment tables of the displaced thermal state.

    Satisfies the bosonic bookkeeping <m_k m_q^dag> - <m_q^dag m_k> =
    delta_kq identically in (nbar, epsilon_k).
    """
    eps = np.asarray(epsilon_k)
    eye = np.eye(eps.size)
    outer = np.outer(eps, eps)
    cross = np.outer(eps.conj(), eps)
    return DisplacedMoments(
        mean=-eps,
        mm=outer,
        mdag_m=nbar * eye + cross,
        m_mdag=(nbar + 1.0) * eye + cross.conj().T,
    )


def bath_correlation(t, eta_k, omega_k):
    """Bath correlation G(t) = sum_k |eta_k|^2 * exp(i*omega_k*t).

    t may be a scalar or an array; the sum is evaluated exactly at each
    sample (no quadrature), chunked to bound memory.
    """
    weights = np.abs(np.asarray(eta_k)) ** 2
    omega = np.asarray(omega_k, dtype=float)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.size, dtype=complex)
    chunk = 4096
    for lo in range(0, t_arr.size, chunk):
        block = t_arr[lo:lo + chunk]
        out[lo:lo + chunk] = np.exp(1j * np.outer(block, omega)) @ weights
    return out[0] if np.isscalar(t) or np.ndim(t) == 0 else out


def correlation_time(times, G):
    """Sustained-decay estimate of the bath correlation time.

    Returns (tau_B, window) where tau_B is the first sample time at which
    |G| crosses below |G(0)|/e and stays there over the following decade
    [tau_B, 10*tau_B] in the time-averaged sense. The average is the
    right notion on a finite chain: the discrete k=0 mode carries a fixed
    weight fraction that beats against its neighbours forever, so a
    pointwise bound would never be met even when the correlation has
    long since dephased.
    """
    times = np.asarray(times, dtype=float)
    mag = np.abs(np.asarray(G))
    if times[0] != 0.0:
        raise PhysicsError("correlation samples must start at t = 0")
    level = mag[0] / math.e
    below = mag < level
    # last sample index inside each candidate's [t, 10t] window
    limit = np.searchsorted(times, 10.0 * times, side="right") - 1
    idx = np.arange(times.size)
    candidates = below & (times > 0) & (10.0 * times <= times[-1]) & (limit > idx)
    integral = np.concatenate(
        ([0.0], np.cumsum(0.5 * (mag[1:] + mag[:-1]) * np.diff(times))))
    for i in np.flatnonzero(candidates):
        j = limit[i]
        if integral[j] - integral[i] < level * (times[j] - times[i]):
            tau = float(times[i])
            return tau, 10.0 * tau
    raise PhysicsError(
        "correlation never decays below 1/e over a sustained window")


def markov_report(mat, geo, nv, fields, kappa, T1, T2,
                  eta_k=None, omega_k=None, representative_ka=math.pi / 2,
                  t_window=100e-9, samples=20001):
    """Diagnostics for the Markov and mode-continuum approximations.

    Builds the coupling and dispersion tables itself unless eta_k/omega_k
    are supplied. Flags only; never raises on a bad separation.
    """
    from . import coupling as cpl
    from . import magnonics as mag

    if eta_k is None or omega_k is None:
        k = mag.k_grid(geo.N, mat.a)
        site = cpl.dipolar_site_coefficients(nv.x_positions[0], nv, mat, geo)
        dressing = cpl.dress_qubit(site, nv, fields.B0)
        ksp = cpl.to_k_space(cpl.rotated_site_coefficients(site, dressing),
                             k)
        eta_k = ksp.eta_k
        omega_k = mag.strip_dispersion(k, geo.n_y, mat, geo, fields)

    # delta-omega/Delta-omega = sin(ka)*pi/(2N): discrete spacing vs the
    # band position at the representative wavenumber
    spacing = math.sin(representative_ka) * math.pi / (2.0 * geo.N)

    times = np.linspace(0.0, t_window, samples)
    try:
        tau_B, _ = correlation_time(times, bath_correlation(
            times, eta_k, omega_k))
    except PhysicsError:
        tau_B = math.inf

    tau_s = math.inf if kappa == 0 else 1.0 / kappa
    omega_plus = nv.D_zfs + nv.gamma_NV * fields.B0
    return MarkovReport(
        mode_spacing_ratio=spacing,
        tau_B=tau_B,
        tau_s=tau_s,
        markov_ok=bool(tau_B < 0.01 * tau_s),
        spacing_ok=bool(spacing < 0.01),
        T_two_level_bound=mag.occupation_temperature(omega_plus, 0.1),
    )
