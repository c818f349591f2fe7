"""Liouvillian construction, propagation, and steady-state solver tests."""

import math

import numpy as np
import pytest

from magnv import (
    Liouvillian,
    MasterEqParams,
    PhysicsError,
    TwoQubitState,
    build_liouvillian,
    evolve,
    initial_state,
    steady_state,
)
import magnv.dynamics as dyn

from _properties import random_density, rng, trace_distance


def _random_params(r):
    return MasterEqParams(
        kappa=10 ** r.uniform(2, 6),
        nbar0=r.uniform(0, 1.5),
        epsilon=r.uniform(0, 0.7),
        eta0=r.normal() * 1e5,
        Omega=0.0,
        kappa_NV=10 ** r.uniform(1, 4),
        kappa_NV_deph=10 ** r.uniform(1, 4),
    )


def test_vectorization_identities():
    r = rng(1)
    for _ in range(5):
        A = r.normal(size=(4, 4)) + 1j * r.normal(size=(4, 4))
        B = r.normal(size=(4, 4)) + 1j * r.normal(size=(4, 4))
        rho = random_density(r)
        lhs = dyn.unvec(dyn.spre(A) @ dyn.spost(B) @ dyn.vec(rho))
        assert np.allclose(lhs, A @ rho @ B, rtol=1e-12)
        lhs2 = dyn.unvec(dyn.dsup(A, B) @ dyn.vec(rho))
        rhs2 = 2 * A @ rho @ B - (B @ A) @ rho - rho @ (B @ A)
        assert np.allclose(lhs2, rhs2, rtol=1e-12)


def test_zero_parameters_give_zero_generator():
    L = build_liouvillian(MasterEqParams(kappa=0, nbar0=0, epsilon=0,
                                         eta0=0, Omega=0))
    assert np.all(L.L == 0)


def test_private_amplitude_damping_rate():
    kNV = 2000.0
    L = build_liouvillian(MasterEqParams(kappa=0, nbar0=0, epsilon=0, eta0=0,
                                         Omega=0, kappa_NV=kNV))
    t = np.linspace(0, 3e-3, 9)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0  # both qubits excited
    traj = evolve(rho0, L, t)
    assert np.allclose(np.real(traj.rhos[:, 0, 0]), np.exp(-2 * kNV * t),
                       atol=1e-12)


def test_private_dephasing_rate():
    kd = 2000.0
    L = build_liouvillian(MasterEqParams(kappa=0, nbar0=0, epsilon=0, eta0=0,
                                         Omega=0, kappa_NV_deph=kd))
    t = np.linspace(0, 3e-3, 9)
    rho0 = initial_state("plus-minus")
    traj = evolve(rho0, L, t)
    assert np.allclose(traj.rhos[:, 1, 2], rho0[1, 2] * np.exp(-2 * kd * t),
                       atol=1e-12)


def test_generator_is_dissipative_over_random_draws():
    r = rng(3)
    for _ in range(100):
        build_liouvillian(_random_params(r)).validate()


def test_validate_rejects_non_generator():
    r = rng(4)
    bad = r.normal(size=(16, 16)) + 1j * r.normal(size=(16, 16))
    with pytest.raises(PhysicsError):
        Liouvillian(L=bad, params=None).validate()


def test_parameter_validation():
    with pytest.raises(PhysicsError):
        MasterEqParams(kappa=-1.0, nbar0=0, epsilon=0, eta0=0,
                       Omega=0).validate()
    with pytest.raises(PhysicsError):
        MasterEqParams(kappa=0, nbar0=0, epsilon=0, eta0=0, Omega=0,
                       frame="interaction").validate()
    with pytest.raises(PhysicsError):
        TwoQubitState(np.eye(4, dtype=complex)).validate()  # trace 4


def test_evolve_endpoints():
    r = rng(5)
    rho0 = random_density(r)
    L = build_liouvillian(_random_params(r))
    t = np.array([0.0, 1e-5, 1e-3])
    traj = evolve(rho0, L, t)
    assert trace_distance(traj.rhos[0], rho0) < 1e-12
    frozen = evolve(rho0, build_liouvillian(
        MasterEqParams(kappa=0, nbar0=0, epsilon=0, eta0=0, Omega=0)), t)
    for state in frozen.rhos:
        assert trace_distance(state, rho0) < 1e-12


def test_eigen_and_expm_propagators_agree():
    r = rng(6)
    for _ in range(3):
        rho0 = random_density(r)
        L = build_liouvillian(_random_params(r))
        t = np.array([0.0, 3e-5, 2e-4, 9e-4])
        a = evolve(rho0, L, t)
        b = evolve(rho0, L, t, force_expm=True)
        for x, y in zip(a.rhos, b.rhos):
            assert trace_distance(x, y) < 1e-10


def test_steady_state_private_cooling():
    L = build_liouvillian(MasterEqParams(kappa=0, nbar0=0, epsilon=0, eta0=0,
                                         Omega=0, kappa_NV=500.0))
    ss = steady_state(L)
    assert ss.kernel_dim == 1
    ground = np.zeros((4, 4), dtype=complex)
    ground[3, 3] = 1.0
    assert trace_distance(ss.state.rho, ground) < 1e-10


def test_steady_state_degenerate_kernel_needs_initial_state():
    L = build_liouvillian(MasterEqParams(kappa=100.0, nbar0=0.0, epsilon=0.0,
                                         eta0=0.0, Omega=0.0))
    with pytest.raises(PhysicsError):
        steady_state(L)
    ss = steady_state(L, rho0=initial_state("plus-minus"))
    assert ss.kernel_dim > 1
    assert ss.state.rho[3, 3].real == pytest.approx(0.5, abs=1e-9)


def test_steady_state_matches_long_time_limit():
    r = rng(7)
    for _ in range(5):
        p = _random_params(r)
        L = build_liouvillian(p)
        rho0 = random_density(r)
        ss = steady_state(L, rho0=rho0)
        w = np.linalg.eigvals(L.L)
        rates = -w.real[w.real < -1e-9 * np.linalg.norm(L.L, 2)]
        late = evolve(rho0, L, np.array([0.0, 20.0 / rates.min()])).rhos[-1]
        assert trace_distance(late, ss.state.rho) < 1e-6


def test_collective_block_structure():
    # switching off the private channels confines |+-> to the one-excitation
    # block: only populations and rho23 may move, and rho23 stays real <= 0
    L = build_liouvillian(MasterEqParams(kappa=49.34, nbar0=0.05, epsilon=0.0,
                                         eta0=-5.5e4, Omega=0.0))
    traj = evolve(initial_state("plus-minus"), L, np.linspace(0, 0.2, 300))
    for i, j in ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3)):
        assert np.max(np.abs(traj.rhos[:, i, j])) < 1e-10
    rho23 = traj.rhos[:, 1, 2]
    assert np.max(np.abs(rho23.imag)) < 1e-10
    assert np.max(rho23.real) < 1e-12


def test_steady_state_is_x_shaped():
    # without the coherent drive the generator preserves the X pattern
    # exactly; the corner coherence switches on with the displacement
    base = dict(kappa=6.8e8, nbar0=0.0, eta0=0.0, Omega=0.0,
                kappa_NV=1000.0, kappa_NV_deph=1000.0)
    rho0 = initial_state("plus-minus")
    on = steady_state(build_liouvillian(MasterEqParams(epsilon=0.2, **base)),
                      rho0=rho0).state.rho
    off = steady_state(build_liouvillian(MasterEqParams(epsilon=0.0, **base)),
                       rho0=rho0).state.rho
    for i, j in ((0, 1), (0, 2), (1, 3), (2, 3)):
        assert abs(on[i, j]) < 1e-8
        assert abs(off[i, j]) < 1e-8
    assert abs(on[0, 3]) > 1e-3
    assert abs(off[0, 3]) < 1e-12
    # the sigma-y drive tilts the X pattern only at order eta0*eps/kappa
    drive = dict(base, eta0=-889993.0)
    tilted = steady_state(
        build_liouvillian(MasterEqParams(epsilon=0.2, **drive)),
        rho0=rho0).state.rho
    scale = abs(drive["eta0"]) * 0.2 / drive["kappa"]
    worst = max(abs(tilted[i, j])
                for i, j in ((0, 1), (0, 2), (1, 3), (2, 3)))
    assert worst < 5 * scale


def test_squeezing_terms_scale_as_epsilon_squared():
    kap, nb, eps = 3.7e5, 0.42, 0.31
    La = build_liouvillian(MasterEqParams(kappa=kap, nbar0=nb, epsilon=eps,
                                          eta0=0, Omega=0)).L
    Lb = build_liouvillian(MasterEqParams(kappa=kap, nbar0=nb + eps * eps,
                                          epsilon=0, eta0=0, Omega=0)).L
    squeeze = -(kap * eps * eps / 2) * (
        dyn.dsup(dyn.S_PLUS, dyn.S_PLUS) + dyn.dsup(dyn.S_MINUS, dyn.S_MINUS))
    assert np.max(np.abs(La - Lb - squeeze)) == 0.0
    Lc = build_liouvillian(MasterEqParams(kappa=kap, nbar0=nb,
                                          epsilon=2 * eps, eta0=0,
                                          Omega=0)).L
    Ld = build_liouvillian(MasterEqParams(kappa=kap,
                                          nbar0=nb + 4 * eps * eps,
                                          epsilon=0, eta0=0, Omega=0)).L
    assert np.max(np.abs((Lc - Ld) - 4 * squeeze)) == 0.0
