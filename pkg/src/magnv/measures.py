"""Entanglement and coherence measures, DFS fidelities, ESD event detection."""

import math
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import SIGMA_Y
from .errors import PhysicsError

_SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

# standard basis {|11>, |10>, |01>, |00>}
_STATE_VECTORS = {
    "plus-minus": np.array([0, 1, 0, 0], dtype=complex),
    "dfs1": np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2),
    "dfs2": np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    "bell-plus": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
}


def initial_state(name):
    """Density matrix of a named two-qubit pure state.

    Known names: plus-minus (one qubit excited), dfs1 (singlet), dfs2
    ((|11> - |00>)/sqrt(2)), bell-plus ((|11> + |00>)/sqrt(2)).
    """
    try:
        psi = _STATE_VECTORS[name]
    except KeyError:
        known = ", ".join(sorted(_STATE_VECTORS))
        raise PhysicsError(f"unknown state '{name}'; known: {known}") from None
    return np.outer(psi, psi.conj())


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l_i the
    descending eigenvalues of rho (sy x sy) rho* (sy x sy). Round-off
    eigenvalues below zero are clamped before the square roots.
    """
    rho = np.asarray(rho, dtype=complex)
    R = rho @ _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    lam = np.sort(np.linalg.eigvals(R).real)[::-1]
    roots = np.sqrt(np.clip(lam, 0.0, None))
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def l1_coherence(rho):
    """Sum of absolute off-diagonal elements in the standard basis."""
    rho = np.asarray(rho)
    off = np.abs(rho[~np.eye(rho.shape[0], dtype=bool)])
    return float(np.sum(off))


def dfs_fidelities(rho):
    """Overlaps with the two decoherence-free states (singlet, dfs2)."""
    rho = np.asarray(rho, dtype=complex)
    s1 = _STATE_VECTORS["dfs1"]
    s2 = _STATE_VECTORS["dfs2"]
    f1 = float((s1.conj() @ rho @ s1).real)
    f2 = float((s2.conj() @ rho @ s2).real)
    return f1, f2


def annotate(traj):
    """Trajectory with concurrence, l1 coherence, and DFS fidelities filled."""
    n = traj.rhos.shape[0]
    C = np.empty(n)
    C1 = np.empty(n)
    F1 = np.empty(n)
    F2 = np.empty(n)
    for i in range(n):
        rho = traj.rhos[i]
        C[i] = concurrence(rho)
        C1[i] = l1_coherence(rho)
        F1[i], F2[i] = dfs_fidelities(rho)
    return replace(traj, concurrence=C, l1=C1, f_dfs1=F1, f_dfs2=F2)


@dataclass(frozen=True)
class EsdReport:
    """Concurrence death/revival events and settled end-state values."""

    death_times: tuple
    revival_times: tuple
    transient_peak: float
    C_ss: float
    C1_ss: float

    def validate(self):
        merged = []
        for d, r in zip(self.death_times,
                        self.revival_times + (math.inf,) * len(self.death_times)):
            merged.extend([d, r])
        merged = [t for t in merged if math.isfinite(t)]
        if any(b <= a for a, b in zip(merged, merged[1:])):
            raise PhysicsError("ESD events must interleave and increase")
        return self


def detect_esd(traj, floor=1e-4):
    """Entanglement sudden-death and revival events along a trajectory.

    A death is the entry into C < floor after C has exceeded 2*floor; a
    revival is the subsequent climb back above 2*floor. The hysteresis
    keeps the max(0, .) kink of the concurrence from chattering. The
    final 10% of samples must be settled (max-min spread below 1e-6 in
    both C and C1) to report steady-state values.
    """
    if traj.concurrence is None:
        traj = annotate(traj)
    C = traj.concurrence
    C1 = traj.l1
    times = traj.times

    tail = max(2, C.size // 10)
    spread = max(np.ptp(C[-tail:]), np.ptp(C1[-tail:]))
    if spread >= 1e-6:
        raise PhysicsError(
            f"trajectory not steady: final-decade spread {spread:.3e}")

    deaths = []
    revivals = []
    armed = False
    dead = False
    for i in range(C.size):
        if C[i] > 2 * floor:
            if dead:
                revivals.append(times[i])
                dead = False
            armed = True
        elif armed and not dead and C[i] < floor:
            deaths.append(times[i])
            dead = True
    first_death = np.searchsorted(times, deaths[0]) if deaths else C.size
    peak = float(C[:first_death].max()) if first_death > 0 else 0.0
    return EsdReport(
        death_times=tuple(deaths),
        revival_times=tuple(revivals),
        transient_peak=peak,
        C_ss=float(C[-tail:].mean()),
        C1_ss=float(C1[-tail:].mean()),
    ).validate()
