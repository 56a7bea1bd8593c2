"""Heralded W and W-like states from single-photon scattering in a waveguide-coupled emitter chain."""
from .dynamics import (
    SuddenDeathEvent,
    TimeSeries,
    WaveformSpec,
    detect_sudden_death,
    evolve,
    peak_excitations,
    peak_success_probability,
    spectral_amplitude,
)
from .entanglement import (
    DensityMatrix,
    concurrence,
    density_from_amplitudes,
    density_from_pure,
    negativity,
    pairwise_concurrences,
    partial_trace,
    partial_transpose,
    schmidt_negativity,
    tripartite_negativity,
)
from .model import ChainConfig, EmitterParams, validate, waveguide_rate
from .scattering import (
    MultipartiteState,
    ScatteringSolution,
    build_matrix,
    field_profile,
    make_state,
    project_state,
    solve_stationary,
    state_fidelity,
    w_state,
)

__version__ = "0.1.0"
