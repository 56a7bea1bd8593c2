"""Stationary single-photon scattering off the emitter chain.

A photon of wavenumber ``k`` incident from the left is described by a
single-excitation eigenstate with right/left-moving envelopes and emitter
amplitudes ``xi_j``.  Eliminating the photon field gives an N x N complex
symmetric system for ``xi``; transmission, reflection and the amplitudes
between emitters then follow from the field jumps at each emitter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularSystem, ZeroExcitation
from .model import ChainConfig, validate

#: Reciprocal condition number below which the system is declared singular.
RCOND_MIN = 1e-12


def _matrices(positions, couplings, detunings, dissipations, ks, v_g):
    """Stack of coupling matrices, one per wavenumber in ``ks``.

    ``detunings`` has shape (len(ks), N) so callers can move the detuning
    with the photon energy.
    """
    dist = np.abs(positions[:, None] - positions[None, :])
    vv = np.outer(couplings, couplings) / v_g
    A = -1j * vv[None] * np.exp(1j * ks[:, None, None] * dist[None])
    diag = np.arange(len(positions))
    A[:, diag, diag] -= detunings + 0.5j * dissipations[None, :]
    return A


def build_matrix(config: ChainConfig) -> np.ndarray:
    """Coupling matrix ``A`` of the stationary equations ``A @ xi = rhs``.

    ``A_jl = -i V_j V_l / v_g * exp(i k |d_j - d_l|) - [j == l] (delta_j + i Gamma_j / 2)``.
    """
    validate(config)
    ks = np.array([config.k], dtype=float)
    return _matrices(config.positions, config.couplings, config.detunings[None, :],
                     config.dissipations, ks, config.v_g)[0]


def emitter_amplitudes(config: ChainConfig, ks) -> np.ndarray:
    """Emitter amplitudes ``xi_j(k)`` for every wavenumber in ``ks``.

    Detunings follow the photon energy: ``delta_j(k) = delta_j + v_g (k - config.k)``.

    Returns:
        Complex array of shape ``(len(ks), N)``.

    Raises:
        SingularSystem: if any of the systems is numerically singular.
    """
    validate(config)
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    xi = np.zeros((ks.size, config.n), dtype=complex)
    # an emitter with V = 0 is never excited; leaving it out also avoids a
    # spurious singularity when its own detuning and loss vanish
    on = np.flatnonzero(config.couplings > 0)
    if on.size == 0:
        return xi
    d, V = config.positions[on], config.couplings[on]
    det = config.detunings[on][None, :] + config.v_g * (ks - config.k)[:, None]
    A = _matrices(d, V, det, config.dissipations[on], ks, config.v_g)
    with np.errstate(divide="ignore"):
        rcond = 1.0 / np.linalg.cond(A)
    bad = ~(rcond >= RCOND_MIN)
    if np.any(bad):
        kb = ks[np.flatnonzero(bad)[0]]
        raise SingularSystem(
            f"stationary equations singular at k = {kb!r} (rcond < {RCOND_MIN:g})")
    rhs = -V[None, :] * np.exp(1j * ks[:, None] * d[None, :])
    xi[:, on] = np.linalg.solve(A, rhs[..., None])[..., 0]
    return xi


@dataclass(frozen=True)
class ScatteringSolution:
    """Stationary solution at one wavenumber.

    ``segment_right[i]`` / ``segment_left[i]`` are the right/left-moving
    envelopes between emitters ``i+1`` and ``i+2`` (1-based), i.e. the
    coefficients multiplying ``exp(+ikx)`` and ``exp(-ikx)`` there.
    """

    xi: np.ndarray
    t: complex
    r: complex
    segment_right: np.ndarray
    segment_left: np.ndarray

    @property
    def excitation(self) -> np.ndarray:
        """``|xi_j|**2``."""
        return np.abs(self.xi) ** 2

    @property
    def phases(self) -> np.ndarray:
        """Phase of each ``xi_j`` in (-pi, pi]."""
        return np.angle(self.xi)


def solve_stationary(config: ChainConfig) -> ScatteringSolution:
    """Solve the scattering problem for a photon incident from the left."""
    xi = emitter_amplitudes(config, [config.k])[0]
    k, v = config.k, config.v_g
    d, V = config.positions, config.couplings
    # envelope jumps across each emitter
    jump_r = -1j * V * xi * np.exp(-1j * k * d) / v
    jump_l = 1j * V * xi * np.exp(1j * k * d) / v
    right = 1.0 + np.cumsum(jump_r)
    # left-mover envelope vanishes right of the last emitter
    left_after = -np.concatenate([np.cumsum(jump_l[::-1])[::-1][1:], [0.0]])
    r = -np.sum(jump_l)
    return ScatteringSolution(
        xi=xi,
        t=complex(right[-1]),
        r=complex(r),
        segment_right=right[:-1].copy(),
        segment_left=left_after[:-1].copy(),
    )


def field_profile(config: ChainConfig, sol: ScatteringSolution, x):
    """Right- and left-moving photon wavefunctions at position(s) ``x``.

    At an emitter position the step functions take the value 1/2, so the
    envelope there is the mean of the two neighbouring segments.
    """
    x = np.asarray(x, dtype=float)
    d = config.positions
    env_r = np.concatenate([[1.0], sol.segment_right, [sol.t]])
    env_l = np.concatenate([[sol.r], sol.segment_left, [0.0]])
    lo = np.searchsorted(d, x, side="left")
    hi = np.searchsorted(d, x, side="right")
    a_r = 0.5 * (env_r[lo] + env_r[hi])
    a_l = 0.5 * (env_l[lo] + env_l[hi])
    k = config.k
    return a_r * np.exp(1j * k * x), a_l * np.exp(-1j * k * x)


@dataclass(frozen=True)
class MultipartiteState:
    """Single-excitation pure state ``sum_j c_j sigma_j^+ |g...g>``.

    ``herald_probability`` is ``sum_j |xi_j|**2`` of the stationary solution
    the state was projected from.  For a plane-wave eigenstate this weight is
    measured in units where ``v_g = 1`` and only lies in [0, 1] when the
    couplings are of order one; it is exact for a normalized wavepacket.
    """

    amplitudes: np.ndarray
    herald_probability: float = 1.0

    @property
    def n(self) -> int:
        return len(self.amplitudes)


def _fix_phase(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(c) > 0)
    if nz.size == 0:
        return c
    ref = c[nz[0]]
    return c * (abs(ref) / ref)


def make_state(amplitudes) -> MultipartiteState:
    """Normalize ``amplitudes`` into a :class:`MultipartiteState`."""
    c = np.asarray(amplitudes, dtype=complex).ravel()
    norm = float(np.vdot(c, c).real)
    if norm == 0.0:
        raise ZeroExcitation("all amplitudes vanish")
    return MultipartiteState(_fix_phase(c / np.sqrt(norm)), 1.0)


def project_state(sol: ScatteringSolution) -> MultipartiteState:
    """Emitter state left behind when neither end detector clicks.

    The global phase is fixed so that the first nonzero amplitude is real
    and positive.
    """
    xi = np.asarray(sol.xi, dtype=complex)
    weight = float(np.sum(np.abs(xi) ** 2))
    if weight == 0.0:
        raise ZeroExcitation("no emitter is excited; nothing to herald")
    return MultipartiteState(_fix_phase(xi / np.sqrt(weight)), weight)


def w_state(n: int = 3) -> MultipartiteState:
    return MultipartiteState(np.full(n, 1.0 / np.sqrt(n), dtype=complex))


def state_fidelity(a, b) -> float:
    """``|<a|b>|**2`` for two single-excitation states (or raw amplitude vectors)."""
    ca = np.asarray(getattr(a, "amplitudes", a), dtype=complex)
    cb = np.asarray(getattr(b, "amplitudes", b), dtype=complex)
    if ca.shape != cb.shape:
        raise DimensionMismatch(f"{ca.shape} vs {cb.shape}")
    return float(min(1.0, abs(np.vdot(ca, cb)) ** 2))
