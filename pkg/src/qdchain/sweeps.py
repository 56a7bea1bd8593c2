"""One-parameter sweeps of the stationary three-emitter problem."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import density_from_pure, pairwise_concurrences, tripartite_negativity
from .errors import SingularSystem
from .model import ChainConfig, validate
from .scattering import project_state, solve_stationary

AXES = ("V_ratio", "delta_ratio", "gamma_scale", "spacing_phase", "delta3_over_delta1")

COLUMNS = ("axis", "p1", "p2", "p3", "phi1", "phi2", "phi3", "N123", "C12", "C13", "C23",
           "Pherald", "t_re", "t_im", "r_re", "r_im", "status")


@dataclass(frozen=True)
class SweepSpec:
    """Linear grid over one named parameter of a three-emitter baseline.

    Axes:
        V_ratio: ``V_1 = value * V_2``.
        delta_ratio: every ``delta_j = value * Gamma_wg1``.
        gamma_scale: ``Gamma_j = value * Gamma_wg1 * w_j`` where ``w_j`` are
            the baseline ratios ``Gamma_j / Gamma_1`` (all 1 if the baseline
            is lossless).
        spacing_phase: ``k (d_3 - d_2) / 2 pi = value``, ``d_1, d_2`` fixed.
        delta3_over_delta1: ``delta_3 = value * delta_1``.
    """

    axis: str
    lo: float
    hi: float
    points: int
    fixed: ChainConfig

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}; choose from {AXES}")
        if not self.lo < self.hi:
            raise ValueError("sweep range needs lo < hi")
        if int(self.points) != self.points or self.points < 2:
            raise ValueError("a sweep needs at least 2 points")
        validate(self.fixed)
        if self.fixed.n != 3:
            raise ValueError(f"sweeps are defined for three emitters, got {self.fixed.n}")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.points))


def apply_axis(config: ChainConfig, axis: str, value: float) -> ChainConfig:
    """Baseline ``config`` with the swept parameter set to ``value``."""
    V = config.couplings
    gwg1 = config.waveguide_rates[0]
    if axis == "V_ratio":
        V = V.copy()
        V[0] = value * V[1]
        return config.with_emitters(coupling=V)
    if axis == "delta_ratio":
        return config.with_emitters(detuning=np.full(config.n, value * gwg1))
    if axis == "gamma_scale":
        g = config.dissipations
        w = g / g[0] if g[0] > 0 else np.ones(config.n)
        return config.with_emitters(dissipation=value * gwg1 * w)
    if axis == "spacing_phase":
        d = config.positions.copy()
        d[2] = d[1] + 2 * np.pi * value / config.k
        return config.with_emitters(position=d)
    if axis == "delta3_over_delta1":
        det = config.detunings.copy()
        det[2] = value * det[0]
        return config.with_emitters(detuning=det)
    raise ValueError(f"unknown axis {axis!r}")


def measure(config: ChainConfig) -> dict:
    """Stationary excitation, phases and entanglement of a three-emitter chain."""
    sol = solve_stationary(config)
    state = project_state(sol)
    rho = density_from_pure(state)
    conc = pairwise_concurrences(rho)
    p = sol.excitation
    phi = sol.phases
    return {
        "p1": p[0], "p2": p[1], "p3": p[2],
        "phi1": phi[0], "phi2": phi[1], "phi3": phi[2],
        "N123": tripartite_negativity(rho),
        "C12": conc[(1, 2)], "C13": conc[(1, 3)], "C23": conc[(2, 3)],
        "Pherald": state.herald_probability,
        "t_re": sol.t.real, "t_im": sol.t.imag,
        "r_re": sol.r.real, "r_im": sol.r.imag,
        "status": "ok",
    }


def _row(spec: SweepSpec, value: float) -> dict:
    row = {"axis": float(value)}
    try:
        row.update(measure(apply_axis(spec.fixed, spec.axis, value)))
    except SingularSystem:
        row.update({c: None for c in COLUMNS[1:-1]}, status="singular")
    except ValueError as exc:
        row.update({c: None for c in COLUMNS[1:-1]}, status=type(exc).__name__)
    return row


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[dict]:
    """One row per grid value, in axis order.

    Parameter points where the stationary equations are singular (or the
    swept value makes the chain invalid) produce a row with empty measures
    and a non-``ok`` status instead of aborting the sweep.
    """
    values = spec.values
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda v: _row(spec, v), values))
    return [_row(spec, v) for v in values]
