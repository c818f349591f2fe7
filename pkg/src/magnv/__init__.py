"""Magnon-mediated dynamics of two NV-center qubits over a YIG strip.

The package walks the full chain from material parameters to
entanglement curves: spin-wave dispersion of a thin strip, dipolar
couplings to two NV centers above it, the displaced thermal magnon bath
they share, a secular two-qubit master equation, and the concurrence
and coherence measures read off the resulting states.
"""

from ._version import __version__
from .bath import (BathParams, DisplacedMoments, MarkovReport,
                   bath_correlation, coherence_profile, correlation_time,
                   displaced_moments, epsilon_from_fields, markov_report)
from .config import RunConfig, config_hash, parse_quantity, patch_value
from .coupling import (KSpaceCouplings, NVParams, QubitDressing,
                       SiteCouplings, dipolar_site_coefficients,
                       dress_at_field, dress_qubit, rotated_site_coefficients,
                       site_indices, site_positions, solve_resonance,
                       to_k_space)
from .dynamics import (Liouvillian, MasterEqParams, SteadyStateResult,
                       Trajectory, TwoQubitState, build_liouvillian,
                       collective_rate, evolve, steady_state)
from .errors import ConfigError, MagnvError, PhysicsError
from .magnonics import (FieldConfig, MaterialParams, StripGeometry,
                        chain_dispersion, chain_dos, electrical_length,
                        k_grid, occupation_temperature, strip_dispersion,
                        strip_dos_band_edge, thermal_occupation)
from .measures import (EsdReport, annotate, concurrence, detect_esd,
                       dfs_fidelities, initial_state, l1_coherence)
from .pipeline import ResolvedSystem, resolve, run

__all__ = [
    "__version__",
    "BathParams", "DisplacedMoments", "MarkovReport", "bath_correlation",
    "coherence_profile", "correlation_time", "displaced_moments",
    "epsilon_from_fields", "markov_report",
    "RunConfig", "config_hash", "parse_quantity", "patch_value",
    "KSpaceCouplings", "NVParams", "QubitDressing", "SiteCouplings",
    "dipolar_site_coefficients", "dress_at_field", "dress_qubit",
    "rotated_site_coefficients", "site_indices", "site_positions",
    "solve_resonance", "to_k_space",
    "Liouvillian", "MasterEqParams", "SteadyStateResult", "Trajectory",
    "TwoQubitState", "build_liouvillian", "collective_rate", "evolve",
    "steady_state",
    "ConfigError", "MagnvError", "PhysicsError",
    "FieldConfig", "MaterialParams", "StripGeometry", "chain_dispersion",
    "chain_dos", "electrical_length", "k_grid", "occupation_temperature",
    "strip_dispersion", "strip_dos_band_edge", "thermal_occupation",
    "EsdReport", "annotate", "concurrence", "detect_esd", "dfs_fidelities",
    "initial_state", "l1_coherence",
    "ResolvedSystem", "resolve", "run",
]
