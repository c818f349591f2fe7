"""From a validated config to files on disk.

resolve() turns a RunConfig into every derived quantity the master
equation needs; the run_* functions execute one scenario each and write
CSV tables plus a manifest. All numeric CSV cells use 17 significant
digits so outputs are byte-identical across runs of the same config.
"""

import dataclasses
import json
import math
import multiprocessing
import os
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .bath import (BathParams, bath_correlation, coherence_profile,
                   epsilon_from_fields, markov_report)
from .config import RunConfig, config_hash, patch_value
from .coupling import (dress_at_field, rotated_site_coefficients,
                       solve_resonance, to_k_space)
from .dynamics import (MasterEqParams, build_liouvillian, collective_rate,
                       evolve, steady_state)
from .errors import MagnvError, PhysicsError
from .magnonics import (FieldConfig, electrical_length, k_grid,
                        strip_dispersion, strip_dos_band_edge,
                        thermal_occupation)
from .measures import annotate, concurrence, detect_esd, dfs_fidelities, l1_coherence

ESD_FLOOR = 1e-4


@dataclass(frozen=True)
class ResolvedSystem:
    """Everything derived from a config at a fixed bias field."""

    cfg: RunConfig
    B0: float
    fields: object
    omega0: float          # band-edge magnon frequency gamma0*B0 (rad/s)
    omega_NV: float        # bare NV transition D_zfs - gamma_NV*B0 (rad/s)
    sites1: object         # rotated site table, qubit 1
    sites2: object
    dress1: object
    dress2: object
    ksp1: object
    ksp2: object
    k: np.ndarray
    omega_k: np.ndarray
    epsilon: float
    nbar0: float
    D0: float
    kappa: float
    L_E: float
    v_E: float
    bath: BathParams
    meq: MasterEqParams


def resolve(cfg):
    """Derive couplings, bath, and master-equation rates from a config."""
    mat, geo, nv = cfg.material, cfg.geometry, cfg.nv

    B0 = cfg.B0
    if B0 is None:
        B0 = solve_resonance(nv, mat, geo, nv.x_positions[0])
    fields = FieldConfig(B0=B0, B1=cfg.B1, E=cfg.E).validate()

    site1, dress1 = dress_at_field(nv.x_positions[0], nv, mat, geo, B0)
    site2, dress2 = dress_at_field(nv.x_positions[1], nv, mat, geo, B0)
    rel = abs(dress1.Omega - dress2.Omega) / dress1.Omega
    if rel >= 1e-6:
        raise PhysicsError(
            "qubit frequencies differ by more than one part in 1e6 "
            f"(relative gap {rel:.2e}); the two-qubit rotating frame "
            "needs near-identical dressed frequencies")

    sites1 = rotated_site_coefficients(site1, dress1)
    sites2 = rotated_site_coefficients(site2, dress2)
    k = k_grid(geo.N, mat.a)
    ksp1 = to_k_space(sites1, k)
    ksp2 = to_k_space(sites2, k)
    omega_k = strip_dispersion(k, geo.n_y, mat, geo, fields)

    omega0 = mat.gamma0 * B0
    nbar0 = thermal_occupation(omega0, cfg.T)
    D0 = strip_dos_band_edge(mat, geo, fields)
    kappa = collective_rate(D0, ksp1.eta0)

    epsilon = cfg.epsilon
    if epsilon is None:
        epsilon = epsilon_from_fields(cfg.B1, B0, mat.s, geo.N)
    eps_k = coherence_profile(epsilon, ksp1) if epsilon else np.zeros(
        geo.N, dtype=complex)

    bath = BathParams(T=cfg.T, nbar0=nbar0, epsilon=epsilon,
                      epsilon_k=eps_k, D0=D0, kappa=kappa).validate()

    meq = MasterEqParams(
        kappa=kappa, nbar0=nbar0, epsilon=epsilon, eta0=ksp1.eta0,
        Omega=dress1.Omega,
        kappa_NV=0.0 if math.isinf(nv.T1) else 1.0 / nv.T1,
        kappa_NV_deph=0.0 if math.isinf(nv.T2) else 1.0 / nv.T2,
        frame=cfg.frame).validate()

    L_E = electrical_length(cfg.E, mat)
    return ResolvedSystem(
        cfg=cfg, B0=B0, fields=fields, omega0=omega0,
        omega_NV=nv.D_zfs - nv.gamma_NV * B0,
        sites1=sites1, sites2=sites2, dress1=dress1, dress2=dress2,
        ksp1=ksp1, ksp2=ksp2, k=k, omega_k=omega_k,
        epsilon=epsilon, nbar0=nbar0, D0=D0, kappa=kappa,
        L_E=L_E, v_E=mat.omega_M * L_E, bath=bath, meq=meq)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(c) for c in row) + "\n")


def _json_safe(x):
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (complex, np.complexfloating)):
        return [_json_safe(x.real), _json_safe(x.imag)]
    if isinstance(x, np.ndarray):
        return _json_safe(x.tolist())
    return x


def _resolved_block(rs):
    qubits = []
    for d in (rs.dress1, rs.dress2):
        qubits.append({
            "alpha_rad_s": d.alpha, "beta_rad_s": d.beta, "phi_rad": d.phi,
            "omega_i_rad_s": d.omega_i, "Omega_rad_s": d.Omega,
        })
    return {
        "B0_T": rs.B0,
        "omega0_rad_s": rs.omega0,
        "omega_NV_rad_s": rs.omega_NV,
        "d_rad_s": rs.sites1.d,
        "qubits": qubits,
        "xi0_rad_s": rs.ksp1.xi0,
        "zeta0_rad_s": rs.ksp1.zeta0,
        "eta0_rad_s": rs.ksp1.eta0,
        "epsilon": rs.epsilon,
        "nbar0": rs.nbar0,
        "D0_s": rs.D0,
        "kappa_per_s": rs.kappa,
        "kappa_NV_per_s": rs.meq.kappa_NV,
        "kappa_NV_deph_per_s": rs.meq.kappa_NV_deph,
        "L_E_m": rs.L_E,
        "v_E_m_per_s": rs.v_E,
        "frame": rs.meq.frame,
    }


def _markov_block(rs):
    rep = markov_report(rs.cfg.material, rs.cfg.geometry, rs.cfg.nv,
                        rs.fields, rs.kappa, rs.cfg.nv.T1, rs.cfg.nv.T2,
                        eta_k=rs.ksp1.eta_k, omega_k=rs.omega_k)
    return {
        "mode_spacing_ratio": rep.mode_spacing_ratio,
        "tau_B_s": rep.tau_B,
        "tau_s_s": rep.tau_s,
        "markov_ok": rep.markov_ok,
        "spacing_ok": rep.spacing_ok,
        "T_two_level_bound_K": rep.T_two_level_bound,
    }


def write_manifest(out_dir, cfg, rs, results, outputs):
    doc = {
        "tool": {"name": "magnv", "version": __version__},
        "config_sha256": config_hash(cfg.raw),
        "config": cfg.raw,
        "scenario": cfg.scenario,
        "resolved": _resolved_block(rs),
        "markov": _markov_block(rs),
        "results": results,
        "outputs": sorted(outputs),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", newline="") as fh:
        json.dump(_json_safe(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _rho_header():
    cols = []
    for i in range(1, 5):
        for j in range(1, 5):
            cols.append(f"re_rho{i}{j}")
            cols.append(f"im_rho{i}{j}")
    return cols


def _rho_cells(rho):
    cells = []
    for i in range(4):
        for j in range(4):
            cells.append(rho[i, j].real)
            cells.append(rho[i, j].imag)
    return cells


def _write_correlation(out_dir, rs, t_window=100e-9, samples=20001):
    times = np.linspace(0.0, t_window, samples)
    G = bath_correlation(times, rs.ksp1.eta_k, rs.omega_k)
    write_csv(os.path.join(out_dir, "correlation.csv"),
              ["t[s]", "re_G[(rad/s)^2]", "im_G[(rad/s)^2]"],
              zip(times, G.real, G.imag))
    return "correlation.csv"


def run_couplings(cfg, out_dir):
    rs = resolve(cfg)
    s = rs.sites1
    write_csv(os.path.join(out_dir, "couplings.csv"),
              ["j", "x[m]", "theta[rad]", "A[rad/s]", "B[rad/s]",
               "C[rad/s]", "xi[rad/s]", "zeta[rad/s]", "eta[rad/s]"],
              zip(s.j, s.x, s.theta, s.A, s.B, s.C, s.xi, s.zeta, s.eta))
    ksp = rs.ksp1
    write_csv(os.path.join(out_dir, "kspace.csv"),
              ["k[1/m]", "re_xi_k[rad/s]", "im_xi_k[rad/s]",
               "re_zeta_k[rad/s]", "im_zeta_k[rad/s]",
               "re_eta_k[rad/s]", "im_eta_k[rad/s]"],
              zip(ksp.k, ksp.xi_k.real, ksp.xi_k.imag,
                  ksp.zeta_k.real, ksp.zeta_k.imag,
                  ksp.eta_k.real, ksp.eta_k.imag))
    outputs = ["couplings.csv", "kspace.csv"]
    write_manifest(out_dir, cfg, rs, {}, outputs)
    return rs


def run_dispersion(cfg, out_dir):
    rs = resolve(cfg)
    write_csv(os.path.join(out_dir, "dispersion.csv"),
              ["k[1/m]", "omega[rad/s]"], zip(rs.k, rs.omega_k))
    write_manifest(out_dir, cfg, rs, {}, ["dispersion.csv"])
    return rs


def run_resonance(cfg, out_dir):
    # the scenario's whole point is the root, so any fixed B0 is ignored
    solved = dataclasses.replace(cfg, B0=None)
    rs = resolve(solved)
    results = {
        "B0_resonance_T": rs.B0,
        "Omega_rad_s": rs.dress1.Omega,
        "residual_gap_rad_s": rs.omega0 - rs.dress1.Omega,
    }
    write_manifest(out_dir, cfg, rs, results, [])
    return rs


def _esd_block(traj):
    try:
        rep = detect_esd(traj, floor=ESD_FLOOR)
    except PhysicsError as exc:
        return {"steady": False, "error": str(exc)}
    return {
        "steady": True,
        "death_times_s": list(rep.death_times),
        "revival_times_s": list(rep.revival_times),
        "transient_peak": rep.transient_peak,
        "C_ss": rep.C_ss,
        "C1_ss": rep.C1_ss,
    }


def run_evolve(cfg, out_dir):
    rs = resolve(cfg)
    L = build_liouvillian(rs.meq)
    traj = annotate(evolve(cfg.rho0, L, cfg.time.times()))
    rows = []
    for i, t in enumerate(traj.times):
        rows.append([t] + _rho_cells(traj.rhos[i]) +
                    [traj.concurrence[i], traj.l1[i],
                     traj.f_dfs1[i], traj.f_dfs2[i]])
    write_csv(os.path.join(out_dir, "trajectory.csv"),
              ["t[s]"] + _rho_header() + ["C", "C1", "F_dfs1", "F_dfs2"],
              rows)
    outputs = ["trajectory.csv", _write_correlation(out_dir, rs)]
    results = {
        "esd": _esd_block(traj),
        "trace_drift": traj.trace_drift,
        "herm_drift": traj.herm_drift,
    }
    write_manifest(out_dir, cfg, rs, results, outputs)
    return rs, traj


def run_steady(cfg, out_dir):
    rs = resolve(cfg)
    L = build_liouvillian(rs.meq)
    ss = steady_state(L, rho0=cfg.rho0)
    rho = ss.state.rho
    f1, f2 = dfs_fidelities(rho)
    results = {
        "kernel_dim": ss.kernel_dim,
        "rho": rho,
        "C": concurrence(rho),
        "C1": l1_coherence(rho),
        "F_dfs1": f1,
        "F_dfs2": f2,
    }
    outputs = [_write_correlation(out_dir, rs)]
    write_manifest(out_dir, cfg, rs, results, outputs)
    return rs, ss


_SWEEP_COLUMNS = (
    "value", "B0[T]", "epsilon", "nbar0", "D0[s]", "kappa[1/s]",
    "eta0[rad/s]", "Omega[rad/s]", "C_ss", "C1_ss", "n_deaths",
    "n_revivals", "t_first_death[s]", "t_first_revival[s]",
    "transient_peak", "error")


def _sweep_row(args):
    """One sweep point; must stay top-level so Pool can pickle it."""
    doc, path, value = args
    row = dict.fromkeys(_SWEEP_COLUMNS)
    row["value"] = value
    row["error"] = ""
    try:
        cfg = RunConfig.from_dict(patch_value(doc, path, value))
        rs = resolve(cfg)
        L = build_liouvillian(rs.meq)
        ss = steady_state(L, rho0=cfg.rho0)
        rho = ss.state.rho
        row.update({
            "B0[T]": rs.B0, "epsilon": rs.epsilon, "nbar0": rs.nbar0,
            "D0[s]": rs.D0, "kappa[1/s]": rs.kappa,
            "eta0[rad/s]": rs.ksp1.eta0, "Omega[rad/s]": rs.dress1.Omega,
            "C_ss": concurrence(rho), "C1_ss": l1_coherence(rho),
        })
        traj = annotate(evolve(cfg.rho0, L, cfg.time.times()))
        rep = detect_esd(traj, floor=ESD_FLOOR)
        row.update({
            "n_deaths": len(rep.death_times),
            "n_revivals": len(rep.revival_times),
            "t_first_death[s]":
                rep.death_times[0] if rep.death_times else None,
            "t_first_revival[s]":
                rep.revival_times[0] if rep.revival_times else None,
            "transient_peak": rep.transient_peak,
        })
    except MagnvError as exc:
        row["error"] = str(exc)
    return row


def run_sweep(cfg, out_dir, workers=None):
    if workers is None:
        workers = os.cpu_count() or 1
    jobs = [(cfg.raw, cfg.sweep.path, v) for v in cfg.sweep.values]
    if workers <= 1:
        rows = [_sweep_row(job) for job in jobs]
    else:
        with multiprocessing.Pool(workers) as pool:
            rows = pool.map(_sweep_row, jobs)
    write_csv(os.path.join(out_dir, "sweep.csv"), list(_SWEEP_COLUMNS),
              [[row[c] for c in _SWEEP_COLUMNS] for row in rows])
    rs = resolve(cfg)
    n_err = sum(1 for row in rows if row["error"])
    write_manifest(out_dir, cfg, rs,
                   {"rows": len(rows), "rows_with_error": n_err},
                   ["sweep.csv"])
    return rs, rows


_RUNNERS = {
    "couplings": run_couplings,
    "dispersion": run_dispersion,
    "resonance": run_resonance,
    "evolve": run_evolve,
    "steady": run_steady,
}


def run(cfg, out_dir=None, workers=None):
    """Execute the config's scenario; returns whatever the runner returns."""
    out_dir = out_dir or cfg.out_dir
    os.makedirs(out_dir, exist_ok=True)
    if cfg.scenario == "sweep":
        return run_sweep(cfg, out_dir, workers=workers)
    return _RUNNERS[cfg.scenario](cfg, out_dir)
