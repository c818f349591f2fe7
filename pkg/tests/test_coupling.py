"""Site couplings, qubit dressing, k-space transform, and resonance tests."""

import dataclasses
import math
import time

import numpy as np
import pytest

from magnv import (
    MaterialParams,
    NVParams,
    QubitDressing,
    StripGeometry,
    dipolar_site_coefficients,
    dress_qubit,
    rotated_site_coefficients,
    site_indices,
    site_positions,
    solve_resonance,
    to_k_space,
)

from _properties import strip_setup

# Pinned regression values at z_NV = 20 nm, qubit at -L_x/4, solved B0.
D_OVER_2PI = 3251.4142789003236
ETA0 = -55444.17778296673
ZETA0 = 55700.57610240358
XI0 = 7.166228412699474
ALPHA = 226.61712731687567
BETA = 3522813.7492212495
OMEGA_2PI = 1433506039.9344566
B0_RES = 0.051160101353834996
B0_NO_DIPOLE = 0.05121341898643826


def test_site_indices_and_positions():
    mat = MaterialParams.yig()
    j = site_indices(4)
    assert list(j) == [-2, -1, 1, 2]
    x = site_positions(4, mat.a)
    assert np.allclose(x, [-1.5 * mat.a, -0.5 * mat.a, 0.5 * mat.a,
                           1.5 * mat.a], rtol=1e-15)
    x_full = site_positions(1000, mat.a)
    assert x_full[-1] - x_full[0] == pytest.approx(999 * mat.a, rel=1e-12)


def test_dipolar_with_site_overhead():
    # qubit directly above one site: the in-plane angle factors vanish there
    s = strip_setup()
    x = site_positions(s.N, s.mat.a)
    target = s.N // 2 + 3
    site = dipolar_site_coefficients(x[target], s.nv, s.mat, s.geo)
    assert site.theta[target] == pytest.approx(math.pi / 2, abs=1e-12)
    assert abs(site.A[target]) < 1e-10 * site.d
    assert abs(site.C[target]) < 1e-10 * site.d
    assert site.B[target] == pytest.approx(site.d * site.sqrt_2s, rel=1e-12)


def test_dipolar_frequency_scale():
    s = strip_setup()
    assert s.sites[0].d / (2 * math.pi) == pytest.approx(D_OVER_2PI, rel=1e-9)
    assert s.sites[0].d / (2 * math.pi) == pytest.approx(3.25141e3, rel=1e-3)


def test_dipolar_parity_about_qubit():
    # A is odd under x -> -x about the qubit, B and C are even
    s = strip_setup()
    site = dipolar_site_coefficients(0.0, s.nv, s.mat, s.geo)
    assert np.allclose(site.A, -site.A[::-1], rtol=1e-12, atol=0)
    assert np.allclose(site.B, site.B[::-1], rtol=1e-12, atol=0)
    assert np.allclose(site.C, site.C[::-1], rtol=1e-12, atol=0)


def test_dressing_values():
    s = strip_setup()
    d1 = s.dressings[0]
    assert d1.alpha == pytest.approx(ALPHA, rel=1e-9)
    assert d1.beta == pytest.approx(BETA, rel=1e-9)
    assert d1.Omega / (2 * math.pi) == pytest.approx(OMEGA_2PI, rel=1e-9)
    assert d1.Omega / (2 * math.pi) == pytest.approx(1.4335e9, rel=1e-4)
    assert abs(d1.phi) <= math.pi / 4
    # the dressed frequency folds the static shifts into omega_i
    omega_NV = s.nv.D_zfs - s.nv.gamma_NV * s.B0
    sqrt_2s = s.sites[0].sqrt_2s
    assert d1.omega_i == pytest.approx(omega_NV - sqrt_2s * d1.beta, rel=1e-12)
    assert d1.Omega == pytest.approx(
        math.hypot(d1.omega_i, 2 * sqrt_2s * d1.alpha), rel=1e-12)


def test_dressing_without_static_tilt():
    # zeroing the A column removes the basis rotation entirely
    s = strip_setup()
    bare = dipolar_site_coefficients(s.nv.x_positions[0], s.nv, s.mat, s.geo)
    flat = dataclasses.replace(bare, A=np.zeros_like(bare.A))
    d = dress_qubit(flat, s.nv, s.B0)
    assert d.alpha == 0.0
    assert d.phi == 0.0
    assert d.Omega == pytest.approx(abs(d.omega_i), rel=1e-15)


def test_mirror_symmetry_of_qubit_pair():
    s = strip_setup()
    d1, d2 = s.dressings
    assert d2.alpha == pytest.approx(-d1.alpha, rel=1e-9)
    assert d2.phi == pytest.approx(-d1.phi, rel=1e-9)
    assert d2.beta == pytest.approx(d1.beta, rel=1e-12)
    assert d2.Omega == pytest.approx(d1.Omega, rel=1e-12)
    k1, k2 = s.ksps
    assert k2.eta0 == pytest.approx(k1.eta0, rel=1e-9)
    assert k2.zeta0 == pytest.approx(k1.zeta0, rel=1e-9)
    assert k2.xi0 == pytest.approx(-k1.xi0, rel=1e-9)
    # mirrored placement reflects the coupling spectrum through k = 0
    assert np.allclose(np.abs(k2.eta_k[1:]), np.abs(k1.eta_k[1:][::-1]),
                       rtol=1e-9)


def test_rotated_coefficient_identities():
    s = strip_setup()
    site = s.sites[0]
    assert np.allclose(site.zeta - site.eta, site.B - site.C, rtol=1e-12)
    # a vanishing rotation angle leaves the bare coefficients untouched
    bare = dipolar_site_coefficients(s.nv.x_positions[0], s.nv, s.mat, s.geo)
    d = s.dressings[0]
    no_rot = rotated_site_coefficients(
        bare, QubitDressing(alpha=d.alpha, beta=d.beta, phi=0.0,
                            omega_i=d.omega_i, Omega=d.Omega))
    assert np.allclose(no_rot.xi, bare.A, rtol=1e-12)
    assert np.allclose(no_rot.zeta, bare.B, rtol=1e-12)
    assert np.allclose(no_rot.eta, bare.C, rtol=1e-12)


def test_k_space_regression():
    s = strip_setup()
    ksp = s.ksps[0]
    assert ksp.eta0 == pytest.approx(ETA0, rel=1e-9)
    assert ksp.zeta0 == pytest.approx(ZETA0, rel=1e-9)
    assert ksp.xi0 == pytest.approx(XI0, rel=1e-9)
    # magnitudes track the published coupling spectra to 10%
    assert abs(ksp.eta0) == pytest.approx(5.55165e4, rel=0.10)
    assert abs(ksp.zeta0) == pytest.approx(5.557725e4, rel=0.10)
    assert abs(ksp.xi0) == pytest.approx(7.316, rel=0.10)


def test_k_space_of_constant_table():
    # a flat site profile transforms to a single k = 0 line of weight c sqrt(N)
    s = strip_setup()
    c = 3.7
    ones = np.full(s.N, c)
    flat = dataclasses.replace(s.sites[0], xi=ones, zeta=ones, eta=ones)
    ksp = to_k_space(flat, s.k)
    i0 = s.N // 2
    assert ksp.eta_k[i0] == pytest.approx(c * math.sqrt(s.N), rel=1e-12)
    off = np.delete(np.abs(ksp.eta_k), i0)
    assert np.max(off) < 1e-12 * c * math.sqrt(s.N)


def test_k_space_parseval():
    s = strip_setup()
    site, ksp = s.sites[0], s.ksps[0]
    for a, b in ((site.xi, ksp.xi_k), (site.zeta, ksp.zeta_k),
                 (site.eta, ksp.eta_k)):
        assert np.sum(np.abs(b) ** 2) == pytest.approx(
            np.sum(np.abs(a) ** 2), rel=1e-9)


def test_band_edge_coupling_structure():
    # at the band-edge mode the xi channel closes and eta locks to -zeta
    s = strip_setup()
    ksp = s.ksps[0]
    assert abs(ksp.xi0) <= 0.05 * abs(ksp.eta0)
    assert abs(ksp.eta0 + ksp.zeta0) <= 0.05 * abs(ksp.eta0)
    i0 = s.N // 2
    ratios = [abs(ksp.xi_k[i0 + m]) / abs(ksp.eta_k[i0 + m]) for m in range(4)]
    assert all(r1 < r2 for r1, r2 in zip(ratios, ratios[1:]))


def test_solve_resonance():
    s = strip_setup()
    t0 = time.perf_counter()
    B0 = solve_resonance(s.nv, s.mat, s.geo, s.nv.x_positions[0])
    assert time.perf_counter() - t0 < 1.0
    assert B0 == pytest.approx(B0_RES, rel=1e-10)
    assert abs(B0 - 0.05116) <= 0.0005
    # self-consistency: the dressed frequency meets the magnon band edge
    d = dress_qubit(dipolar_site_coefficients(
        s.nv.x_positions[0], s.nv, s.mat, s.geo), s.nv, B0)
    assert abs(d.Omega - s.mat.gamma0 * B0) < 2 * math.pi * 1e3


def test_solve_resonance_no_dipole_limit():
    # pushing the qubit far above the strip removes every dipolar shift
    s = strip_setup()
    nv_far = NVParams.diamond(z_NV=0.1, x_positions=s.nv.x_positions)
    B0 = solve_resonance(nv_far, s.mat, s.geo, nv_far.x_positions[0])
    closed = nv_far.D_zfs / (nv_far.gamma_NV + s.mat.gamma0)
    assert B0 == pytest.approx(closed, rel=1e-9)
    assert B0 == pytest.approx(B0_NO_DIPOLE, rel=1e-9)


def test_solve_resonance_bracket_and_position_insensitivity():
    s = strip_setup()
    wide = solve_resonance(s.nv, s.mat, s.geo, s.nv.x_positions[0])
    tight = solve_resonance(s.nv, s.mat, s.geo, s.nv.x_positions[0],
                            bracket=(0.04, 0.06))
    assert tight == pytest.approx(wide, rel=1e-10)
    eighth = solve_resonance(s.nv, s.mat, s.geo, -s.geo.L_x / 8)
    assert abs(eighth - wide) / wide < 0.01
