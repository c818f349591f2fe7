"""Configuration documents: units, validation, hashing, sweep patching.

A run is described by one JSON document. Every physical quantity is a
{"value": ..., "unit": ...} pair; units come from a fixed whitelist and
are converted at this boundary, so the rest of the package only ever
sees SI with rad/s frequencies.
"""

import copy
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .constants import TWO_PI
from .coupling import NVParams
from .dynamics import TwoQubitState
from .errors import ConfigError, PhysicsError
from .magnonics import MaterialParams, StripGeometry
from .measures import initial_state

SCENARIOS = ("couplings", "dispersion", "resonance", "evolve", "steady", "sweep")

# unit -> (kind, factor to internal SI / rad/s)
_UNITS = {
    "GHz": ("frequency", TWO_PI * 1e9),
    "mT": ("field", 1e-3),
    "T": ("field", 1.0),
    "nm": ("length", 1e-9),
    "um": ("length", 1e-6),
    "μm": ("length", 1e-6),
    "K": ("temperature", 1.0),
    "ms": ("time", 1e-3),
    "s": ("time", 1.0),
    "V/nm": ("efield", 1e9),
    "dimensionless": ("dimensionless", 1.0),
    # material-parameter units
    "GHz/T": ("gyromagnetic", TWO_PI * 1e9),
    "pJ/m": ("stiffness", 1e-12),
    "aJ": ("energy", 1e-18),
    "kA/m": ("magnetization", 1e3),
}


def parse_quantity(node, field, kind, allow_inf=False):
    """SI value of a {"value", "unit"} node, checked against the unit kind."""
    if not isinstance(node, dict) or set(node) != {"value", "unit"}:
        raise ConfigError(field, 'expected an object {"value": ..., "unit": ...}')
    unit = node["unit"]
    if unit not in _UNITS:
        known = ", ".join(sorted(_UNITS))
        raise ConfigError(field, f"unknown unit '{unit}'; allowed: {known}")
    unit_kind, factor = _UNITS[unit]
    if unit_kind != kind:
        raise ConfigError(field, f"unit '{unit}' is not a {kind} unit")
    value = node["value"]
    if isinstance(value, str):
        if allow_inf and value.lower() in ("inf", "infinity"):
            return math.inf
        raise ConfigError(field, f"non-numeric value '{value}'")
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(field, "value must be a number")
    if not math.isfinite(value):
        raise ConfigError(field, "value must be finite")
    return float(value) * factor


def config_hash(doc):
    """sha256 of the canonical (sorted, compact) JSON encoding."""
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _require(doc, key, field):
    if key not in doc:
        raise ConfigError(field, "missing required field")
    return doc[key]


def _parse_material(doc):
    base = None
    if doc.get("preset") == "yig":
        base = MaterialParams.yig()
    elif "preset" in doc:
        raise ConfigError("material.preset", f"unknown preset '{doc['preset']}'")

    kinds = {
        "J": "frequency", "omega_M": "frequency",
        "gamma0": "gyromagnetic", "A_ex": "stiffness", "E_SO": "energy",
        "M_s": "magnetization", "a": "length",
    }
    values = {}
    for name in ("J", "s", "a", "omega_M", "A_ex", "E_SO", "gamma0",
                 "g_factor", "M_s"):
        if name in doc and name != "preset":
            field = f"material.{name}"
            if name in ("s", "g_factor"):
                values[name] = parse_quantity(doc[name], field, "dimensionless")
            else:
                values[name] = parse_quantity(doc[name], field, kinds[name])
    if base is None:
        missing = [n for n in ("J", "s", "a", "omega_M", "A_ex", "E_SO",
                               "gamma0", "g_factor", "M_s") if n not in values]
        if missing:
            raise ConfigError("material", f"missing fields: {', '.join(missing)}")
        mat = MaterialParams(**values)
    else:
        mat = MaterialParams(**{**base.__dict__, **values})
    try:
        return mat.validate()
    except PhysicsError as exc:
        raise ConfigError("material", str(exc)) from exc


def _parse_geometry(doc, mat):
    N = _require(doc, "N", "geometry.N")
    if not isinstance(N, int) or isinstance(N, bool):
        raise ConfigError("geometry.N", "must be an integer")
    geo = StripGeometry(
        N=N,
        L_x=parse_quantity(_require(doc, "L_x", "geometry.L_x"),
                           "geometry.L_x", "length"),
        L_y=parse_quantity(_require(doc, "L_y", "geometry.L_y"),
                           "geometry.L_y", "length"),
        L_z=parse_quantity(_require(doc, "L_z", "geometry.L_z"),
                           "geometry.L_z", "length"),
        n_y=doc.get("n_y", 0),
    )
    try:
        return geo.validate(mat)
    except PhysicsError as exc:
        raise ConfigError("geometry", str(exc)) from exc


def _parse_nv(doc, geo):
    xs = _require(doc, "x_positions", "nv.x_positions")
    if not isinstance(xs, list) or len(xs) != 2:
        raise ConfigError("nv.x_positions", "expected a list of two positions")
    nv = NVParams(
        D_zfs=parse_quantity(_require(doc, "D_zfs", "nv.D_zfs"),
                             "nv.D_zfs", "frequency"),
        gamma_NV=parse_quantity(_require(doc, "gamma_NV", "nv.gamma_NV"),
                                "nv.gamma_NV", "gyromagnetic"),
        z_NV=parse_quantity(_require(doc, "z_NV", "nv.z_NV"),
                            "nv.z_NV", "length"),
        x_positions=tuple(
            parse_quantity(x, f"nv.x_positions[{i}]", "length")
            for i, x in enumerate(xs)),
        T1=parse_quantity(doc["T1"], "nv.T1", "time", allow_inf=True)
        if "T1" in doc else math.inf,
        T2=parse_quantity(doc["T2"], "nv.T2", "time", allow_inf=True)
        if "T2" in doc else math.inf,
    )
    try:
        return nv.validate(geo)
    except PhysicsError as exc:
        raise ConfigError("nv", str(exc)) from exc


def _parse_initial_state(node):
    if isinstance(node, str):
        try:
            return initial_state(node)
        except PhysicsError as exc:
            raise ConfigError("initial_state", str(exc)) from exc
    if isinstance(node, list):
        try:
            rows = []
            for row in node:
                rows.append([complex(c[0], c[1]) if isinstance(c, list)
                             else complex(c) for c in row])
            rho = np.array(rows, dtype=complex)
        except (TypeError, ValueError, IndexError) as exc:
            raise ConfigError("initial_state", f"malformed matrix: {exc}") from exc
        try:
            TwoQubitState(rho).validate()
        except PhysicsError as exc:
            raise ConfigError("initial_state", str(exc)) from exc
        return rho
    raise ConfigError("initial_state", "expected a state name or a 4x4 matrix")


@dataclass(frozen=True)
class TimeGrid:
    t_max: float
    samples: int
    spacing: str = "log"
    t_min: float = None

    def times(self):
        if self.spacing == "linear":
            return np.linspace(0.0, self.t_max, self.samples)
        return np.geomspace(self.t_min, self.t_max, self.samples)


def _parse_time(doc):
    t_max = parse_quantity(_require(doc, "t_max", "time.t_max"),
                           "time.t_max", "time")
    samples = _require(doc, "samples", "time.samples")
    if not isinstance(samples, int) or samples < 2:
        raise ConfigError("time.samples", "must be an integer >= 2")
    spacing = doc.get("spacing", "log")
    if spacing not in ("linear", "log"):
        raise ConfigError("time.spacing", "must be 'linear' or 'log'")
    t_min = None
    if spacing == "log":
        t_min = parse_quantity(_require(doc, "t_min", "time.t_min"),
                               "time.t_min", "time")
        if not 0 < t_min < t_max:
            raise ConfigError("time.t_min", "must satisfy 0 < t_min < t_max")
    if t_max <= 0:
        raise ConfigError("time.t_max", "must be positive")
    return TimeGrid(t_max=t_max, samples=samples, spacing=spacing, t_min=t_min)


@dataclass(frozen=True)
class SweepSpec:
    path: str
    values: tuple


def _parse_sweep(doc):
    path = _require(doc, "path", "sweep.path")
    values = _require(doc, "values", "sweep.values")
    if not isinstance(values, list) or not values:
        raise ConfigError("sweep.values", "expected a non-empty list of numbers")
    for i, v in enumerate(values):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"sweep.values[{i}]", "must be a number")
    return SweepSpec(path=str(path), values=tuple(float(v) for v in values))


@dataclass(frozen=True)
class RunConfig:
    """Validated run description plus the raw document it came from."""

    raw: dict
    scenario: str
    material: MaterialParams
    geometry: StripGeometry
    nv: NVParams
    B0: float             # None means: solve the resonance condition
    B1: float
    E: float
    T: float
    epsilon: float        # None means: derive from B1
    rho0: np.ndarray
    time: TimeGrid
    sweep: SweepSpec
    out_dir: str
    frame: str

    @classmethod
    def from_dict(cls, doc):
        scenario = _require(doc, "scenario", "scenario")
        if scenario not in SCENARIOS:
            raise ConfigError(
                "scenario", f"unknown scenario '{scenario}'; "
                f"allowed: {', '.join(SCENARIOS)}")

        mat = _parse_material(_require(doc, "material", "material"))
        geo = _parse_geometry(_require(doc, "geometry", "geometry"), mat)
        nv = _parse_nv(_require(doc, "nv", "nv"), geo)

        fdoc = _require(doc, "fields", "fields")
        b0_node = fdoc.get("B0", "resonance")
        if b0_node == "resonance":
            B0 = None
        else:
            B0 = parse_quantity(b0_node, "fields.B0", "field")
        B1 = (parse_quantity(fdoc["B1"], "fields.B1", "field")
              if "B1" in fdoc else 0.0)
        E = (parse_quantity(fdoc["E"], "fields.E", "efield")
             if "E" in fdoc else 0.0)

        bdoc = doc.get("bath", {})
        T = (parse_quantity(bdoc["T"], "bath.T", "temperature")
             if "T" in bdoc else 0.0)
        if T < 0:
            raise ConfigError("bath.T", "temperature must be non-negative")
        epsilon = None
        if "epsilon" in bdoc:
            epsilon = parse_quantity(bdoc["epsilon"], "bath.epsilon",
                                     "dimensionless")
            if epsilon < 0:
                raise ConfigError("bath.epsilon", "must be non-negative")

        rho0 = _parse_initial_state(doc.get("initial_state", "plus-minus"))

        time = _parse_time(doc["time"]) if "time" in doc else None
        if scenario in ("evolve", "sweep") and time is None:
            raise ConfigError("time", f"scenario '{scenario}' needs a time grid")

        sweep = _parse_sweep(doc["sweep"]) if "sweep" in doc else None
        if scenario == "sweep" and sweep is None:
            raise ConfigError("sweep", "scenario 'sweep' needs a sweep block")

        frame = doc.get("frame", "rotating")
        if frame not in ("rotating", "lab"):
            raise ConfigError("frame", "must be 'rotating' or 'lab'")

        return cls(raw=copy.deepcopy(doc), scenario=scenario, material=mat,
                   geometry=geo, nv=nv, B0=B0, B1=B1, E=E, T=T,
                   epsilon=epsilon, rho0=rho0, time=time, sweep=sweep,
                   out_dir=doc.get("out", "out"), frame=frame)


def patch_value(doc, path, value):
    """Copy of the raw document with the quantity at the dot-path replaced.

    The path must address a {"value", "unit"} node (or a plain number);
    the sweep machinery re-parses the patched document, so every row goes
    through exactly the same validation as a standalone run.
    """
    patched = copy.deepcopy(doc)
    node = patched
    parts = path.split(".")
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise ConfigError("sweep.path", f"'{path}' not found in config")
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ConfigError("sweep.path", f"'{path}' not found in config")
    target = node[leaf]
    if isinstance(target, dict) and "value" in target:
        target["value"] = value
    elif isinstance(target, (int, float)) and not isinstance(target, bool):
        node[leaf] = value
    else:
        raise ConfigError("sweep.path", f"'{path}' is not a scalar quantity")
    return patched
