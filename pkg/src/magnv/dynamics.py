"""Secular master equation of the two dressed qubits and its propagation.

The generator combines the collective displaced-bath dissipators (thermal
absorption/emission plus squeezing-like pair terms), the effective static
drive, and per-qubit private relaxation and dephasing. Everything acts on
the 4-dimensional two-qubit space, vectorized by column stacking into a
16x16 Liouvillian.

Basis ordering is {|11>, |10>, |01>, |00>} with |1> the excited qubit
state; the default frame is the rotating frame, where the free qubit
Hamiltonian is absorbed and the generator is time independent.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import PhysicsError

# eigenvector conditioning beyond this means a (numerically) defective
# generator; propagation falls back to scaling-and-squaring
_DEFECTIVE_COND = 1e12

SIGMA_P = np.array([[0, 1], [0, 0]], dtype=complex)    # |1><0|
SIGMA_M = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

# per-qubit embeddings and collective ladder operators
SP1, SP2 = np.kron(SIGMA_P, I2), np.kron(I2, SIGMA_P)
SM1, SM2 = np.kron(SIGMA_M, I2), np.kron(I2, SIGMA_M)
SZ1, SZ2 = np.kron(SIGMA_Z, I2), np.kron(I2, SIGMA_Z)
SY1, SY2 = np.kron(SIGMA_Y, I2), np.kron(I2, SIGMA_Y)
S_PLUS = SP1 + SP2
S_MINUS = SM1 + SM2


def vec(rho):
    """Column-stack a matrix into a vector (vec(AXB) = (B^T kron A) vec(X))."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v):
    """Inverse of vec for 4x4-sized vectors."""
    return np.asarray(v, dtype=complex).reshape(4, 4, order="F")


def spre(A):
    """Superoperator of left multiplication by A."""
    return np.kron(I4, A)


def spost(B):
    """Superoperator of right multiplication by B."""
    return np.kron(B.T, I4)


def dsup(A, B):
    """Superoperator of the dissipator D(A,B)rho = 2 A rho B - {BA, rho}."""
    BA = B @ A
    return 2.0 * np.kron(B.T, A) - spre(BA) - spost(BA)


def hamsup(H):
    """Superoperator of the coherent part -i[H, rho]."""
    return -1j * (spre(H) - spost(H))


@dataclass(frozen=True)
class TwoQubitState:
    """Density matrix in the standard product basis."""

    rho: np.ndarray

    def validate(self):
        rho = self.rho
        if rho.shape != (4, 4):
            raise PhysicsError("state must be a 4x4 matrix")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
            raise PhysicsError("state is not Hermitian within 1e-10")
        if abs(np.trace(rho).real - 1.0) > 1e-9 or abs(np.trace(rho).imag) > 1e-9:
            raise PhysicsError("state trace deviates from 1 beyond 1e-9")
        if np.linalg.eigvalsh(rho).min() < -1e-8:
            raise PhysicsError("state has an eigenvalue below -1e-8")
        return self

    @classmethod
    def from_vector(cls, psi):
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class MasterEqParams:
    """Rates and frequencies entering the final master equation."""

    kappa: float                # collective rate D0*eta0^2 (1/s)
    nbar0: float                # thermal occupation at the band edge
    epsilon: float              # bath coherence parameter
    eta0: float                 # k=0 coupling (rad/s), drives -eta0*eps*sum sigma_y
    Omega: float                # dressed qubit frequency (rad/s)
    kappa_NV: float = 0.0       # private relaxation 1/T1 (1/s)
    kappa_NV_deph: float = 0.0  # private dephasing 1/T2 (1/s)
    frame: str = "rotating"

    def validate(self):
        for name in ("kappa", "nbar0", "epsilon", "kappa_NV", "kappa_NV_deph"):
            value = getattr(self, name)
            if value < 0 or not math.isfinite(value):
                raise PhysicsError(
                    f"MasterEqParams.{name} must be finite and non-negative")
        if self.frame not in ("rotating", "lab"):
            raise PhysicsError("frame must be 'rotating' or 'lab'")
        return self


@dataclass(frozen=True)
class Liouvillian:
    """Vectorized generator with its parameter snapshot."""

    L: np.ndarray
    params: MasterEqParams

    def norm(self):
        return np.linalg.norm(self.L, 2)

    def validate(self):
        scale = self.norm()
        if scale == 0.0:
            return self
        # adjoint on the identity vanishing <=> trace preservation
        if np.linalg.norm(self.L.conj().T @ vec(I4)) > 1e-9 * scale:
            raise PhysicsError("Liouvillian does not preserve the trace")
        if np.linalg.eigvals(self.L).real.max() > 1e-9 * scale:
            raise PhysicsError("Liouvillian has an amplifying eigenvalue")
        return self


@dataclass(frozen=True)
class Trajectory:
    """Propagated states with optional derived measures."""

    times: np.ndarray
    rhos: np.ndarray                  # shape (n, 4, 4)
    concurrence: np.ndarray = None
    l1: np.ndarray = None
    f_dfs1: np.ndarray = None
    f_dfs2: np.ndarray = None
    trace_drift: float = 0.0          # worst |tr - 1| before renormalization
    herm_drift: float = 0.0           # worst Hermiticity deviation repaired

    def state(self, i):
        return TwoQubitState(self.rhos[i])


def build_liouvillian(p):
    """Assemble the 16x16 generator from validated MasterEqParams.

    Collective terms act through S+- = sigma_1+- + sigma_2+-; the pair
    (squeezing-like) dissipators carry -kappa*eps^2/2, absorption and
    emission (kappa/2)(nbar0 + eps^2) and (kappa/2)(nbar0 + 1 + eps^2).
    Private channels act per qubit. In the lab frame the free Hamiltonian
    (Omega/2) sum sigma_z is kept; in the rotating frame it is dropped.
    """
    p.validate()
    H = -p.eta0 * p.epsilon * (SY1 + SY2)
    if p.frame == "lab":
        H = H + 0.5 * p.Omega * (SZ1 + SZ2)
    L = hamsup(H)

    ke2 = p.kappa * p.epsilon**2
    L = L - (ke2 / 2.0) * (dsup(S_PLUS, S_PLUS) + dsup(S_MINUS, S_MINUS))
    L = L + (p.kappa / 2.0) * (p.nbar0 + 1.0 + p.epsilon**2) * dsup(S_MINUS, S_PLUS)
    L = L + (p.kappa / 2.0) * (p.nbar0 + p.epsilon**2) * dsup(S_PLUS, S_MINUS)

    for sm, sp, sz in ((SM1, SP1, SZ1), (SM2, SP2, SZ2)):
        L = L + (p.kappa_NV / 2.0) * ((p.nbar0 + 1.0) * dsup(sm, sp)
                                      + p.nbar0 * dsup(sp, sm))
        L = L + (p.kappa_NV_deph / 2.0) * (spre(sz) @ spost(sz) - np.eye(16))
    return Liouvillian(L=L, params=p).validate()


def _propagate(L, v0, times, force_expm=False):
    """exp(L t) v0 over the sample times, eigendecomposition when sound."""
    if not force_expm:
        w, V = np.linalg.eig(L)
        if np.linalg.cond(V) < _DEFECTIVE_COND:
            c = np.linalg.solve(V, v0)
            return V @ (np.exp(np.outer(w, times)) * c[:, None])
    out = np.empty((16, len(times)), dtype=complex)
    for i, t in enumerate(times):
        out[:, i] = expm(L * t) @ v0
    return out


def evolve(rho0, L, times, force_expm=False):
    """Propagate rho0 under the time-independent generator.

    Each sampled state is re-Hermitized and trace-renormalized, with the
    repaired drift recorded on the trajectory. A state more than 1e-6
    below positivity signals a broken generator and raises.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise PhysicsError("times must be a non-empty 1-d grid")
    if np.any(np.diff(times) <= 0) or times[0] < 0:
        raise PhysicsError("times must be non-negative and strictly increasing")
    if isinstance(rho0, TwoQubitState):
        rho0 = rho0.rho
    TwoQubitState(np.asarray(rho0, dtype=complex)).validate()

    vs = _propagate(L.L, vec(rho0), times, force_expm=force_expm)
    rhos = vs.T.reshape(-1, 4, 4).transpose(0, 2, 1)  # unvec each column
    herm_drift = float(np.max(np.abs(rhos - rhos.conj().transpose(0, 2, 1))))
    rhos = 0.5 * (rhos + rhos.conj().transpose(0, 2, 1))
    traces = np.einsum("nii->n", rhos).real
    trace_drift = float(np.max(np.abs(traces - 1.0)))
    rhos = rhos / traces[:, None, None]
    eigmin = float(np.min(np.linalg.eigvalsh(rhos)))
    if eigmin < -1e-6:
        raise PhysicsError(
            f"trajectory violates positivity by {-eigmin:.3e}; "
            "the generator is not completely positive")
    return Trajectory(times=times, rhos=rhos,
                      trace_drift=trace_drift, herm_drift=herm_drift)


@dataclass(frozen=True)
class SteadyStateResult:
    state: TwoQubitState
    kernel_dim: int


def steady_state(L, rho0=None):
    """Fixed point(s) of the generator.

    A one-dimensional kernel gives the unique trace-1 fixed point. A
    degenerate kernel (dark states) requires rho0; the t -> infinity
    limit is then the biorthogonal spectral projector onto the kernel
    applied to vec(rho0).
    """
    A = L.L
    # SVD gives orthonormal kernel bases even when eig degenerates on the
    # repeated zero eigenvalue: A v = 0 for rows of Vh with sigma ~ 0, and
    # u^dag A = 0 for the matching columns of U.
    U, s, Vh = np.linalg.svd(A)
    scale = s[0]
    tol = 1e-9 * scale if scale > 0 else np.inf
    small = s < tol
    dim = int(np.count_nonzero(small))
    if dim == 0:
        raise PhysicsError("no kernel found; generator is not a Liouvillian")

    if dim == 1:
        v = Vh[small].conj().T[:, 0]
    else:
        if rho0 is None:
            raise PhysicsError(
                f"kernel is {dim}-dimensional; an initial state is needed "
                "to select the t->infinity limit")
        if isinstance(rho0, TwoQubitState):
            rho0 = rho0.rho
        R = Vh[small].conj().T
        W = U[:, small]
        # zero is semisimple for a Lindblad generator, so the oblique
        # projector R (W^dag R)^-1 W^dag is the t -> infinity limit
        overlap = W.conj().T @ R
        v = R @ np.linalg.solve(overlap, W.conj().T @ vec(rho0))

    rho = unvec(v)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise PhysicsError("kernel vector is traceless; cannot normalize")
    rho = rho / tr
    return SteadyStateResult(state=TwoQubitState(rho).validate(), kernel_dim=dim)


def collective_rate(D0, eta0):
    """Collective dissipation rate kappa = D0 * eta0^2."""
    if D0 < 0:
        raise PhysicsError("D0 must be non-negative")
    return D0 * eta0 * eta0
