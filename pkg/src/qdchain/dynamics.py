"""Time evolution of a shaped single photon through the chain.

The incoming photon is expanded in the stationary scattering states, so the
emitter amplitudes at time ``t`` are

    xi_j(t) = (1 / 2 pi) * integral f(k) xi_j(k) exp(-i v_g k t) dk

with ``f(k)`` the spectrum of the free incoming wavepacket and ``xi_j(k)``
the stationary amplitude at wavenumber ``k``.  The integral is a trapezoid
sum on a uniform grid around the carrier that is enlarged until the
probabilities stop moving.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar

from .entanglement import concurrence, density_from_amplitudes, partial_trace
from .errors import QuadratureNotConverged, UnknownPair
from .model import ChainConfig, validate
from .scattering import emitter_amplitudes

log = logging.getLogger(__name__)

SHAPES = ("exponential_decay", "exponential_growth")
_ALIASES = {"decay": "exponential_decay", "growth": "exponential_growth"}

DEFAULT_POINTS = 4096
#: Grid half-width in units of 1 / (v_g tau).
DEFAULT_HALFWIDTH = 40.0
DEFAULT_TOL = 1e-3
MAX_DOUBLINGS = 3
DEFAULT_DEATH_THRESHOLD = 1e-4
_TIME_CHUNK = 128


@dataclass(frozen=True)
class WaveformSpec:
    """Exponentially shaped single photon travelling to the right.

    Attributes:
        shape: ``"exponential_decay"`` (sharp leading edge at ``x0``, tail
            trailing to the left) or ``"exponential_growth"`` (the mirror
            image: sharp trailing edge at ``x0``, tail leading to the right).
        tau: 1/e time of the intensity envelope.
        k0: Carrier wavenumber.
        x0: Position of the sharp edge at ``t = 0``; must lie left of the
            first emitter.

    For the growth shape the spectrum is that of the free packet, so the
    state is the one that looked like this packet long before reaching the
    chain; its exponential tail already touches the emitters at ``t = 0``.
    """

    shape: str
    tau: float
    k0: float
    x0: float

    def __post_init__(self):
        shape = _ALIASES.get(self.shape, self.shape)
        if shape not in SHAPES:
            raise ValueError(f"unknown waveform shape {self.shape!r}; expected one of {SHAPES}")
        object.__setattr__(self, "shape", shape)
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.k0 > 0:
            raise ValueError(f"carrier k0 must be positive, got {self.k0}")

    def envelope(self, x, v_g: float = 1.0) -> np.ndarray:
        """Square-normalized spatial envelope ``psi(x)`` (carrier not included)."""
        x = np.asarray(x, dtype=float)
        ell = v_g * self.tau
        u = (x - self.x0) if self.shape == "exponential_decay" else (self.x0 - x)
        out = np.where(u <= 0, np.exp(np.minimum(u, 0.0) / (2 * ell)), 0.0)
        out = np.where(u == 0, 0.5, out)
        return out / np.sqrt(ell)


def spectral_amplitude(waveform: WaveformSpec, k, v_g: float = 1.0):
    """Fourier amplitude of ``psi(x) exp(i k0 x)``, normalized to ``int |f|^2 dk / 2pi = 1``.

    Both shapes have a Lorentzian power spectrum of half width
    ``1 / (2 v_g tau)`` centred on ``k0``.
    """
    q = np.asarray(k, dtype=float) - waveform.k0
    ell = v_g * waveform.tau
    g = 0.5 / ell
    sign = 1.0 if waveform.shape == "exponential_growth" else -1.0
    return np.exp(-1j * q * waveform.x0) / (np.sqrt(ell) * (g + sign * 1j * q))


@dataclass(frozen=True)
class KGrid:
    """Uniform wavenumber grid with trapezoid weights (weights include 1/2pi)."""

    k: np.ndarray
    weights: np.ndarray

    @classmethod
    def centered(cls, k0: float, halfwidth: float, points: int) -> "KGrid":
        k = k0 + np.linspace(-halfwidth, halfwidth, points)
        w = np.full(points, (k[1] - k[0]) / (2 * np.pi))
        w[[0, -1]] *= 0.5
        return cls(k, w)

    @property
    def spacing(self) -> float:
        return float(self.k[1] - self.k[0])


@dataclass
class TimeSeries:
    """Emitter amplitudes and derived quantities on a time grid.

    ``concurrence`` maps a 1-based emitter pair ``(j, l)`` with ``j < l``
    to its concurrence at each time.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    concurrence: dict = field(default_factory=dict)
    grid_points: int = 0

    @property
    def excitation(self) -> np.ndarray:
        """``|xi_j(t)|**2``, shape ``(len(times), N)``."""
        return np.abs(self.amplitudes) ** 2

    @property
    def total(self) -> np.ndarray:
        return self.excitation.sum(axis=1)

    @property
    def pairs(self) -> list:
        return sorted(self.concurrence)


@dataclass(frozen=True)
class SuddenDeathEvent:
    """Entanglement of ``pair`` is gone from ``death_time`` until ``revival_time``.

    ``death_time`` is the first sample below threshold and ``revival_time``
    the first sample back at or above it.
    """

    pair: tuple
    death_time: float
    revival_time: float


class _Propagator:
    """Evaluates ``xi_j(t)`` for one config, waveform and k-grid."""

    def __init__(self, config: ChainConfig, waveform: WaveformSpec, grid: KGrid):
        self.config = config
        self.waveform = waveform
        self.grid = grid
        xi = emitter_amplitudes(config, grid.k)
        f = spectral_amplitude(waveform, grid.k, config.v_g)
        self._weighted = (grid.weights * f)[:, None] * xi
        self._q = grid.k - waveform.k0

    def __call__(self, times) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        v = self.config.v_g
        out = np.empty((times.size, self.config.n), dtype=complex)
        # fixed chunking keeps the summation order independent of len(times)
        for s in range(0, times.size, _TIME_CHUNK):
            tt = times[s:s + _TIME_CHUNK]
            out[s:s + _TIME_CHUNK] = np.exp(-1j * v * np.outer(tt, self._q)) @ self._weighted
        carrier = np.exp(-1j * v * self.waveform.k0 * times)
        return out * carrier[:, None]


def _min_points(config: ChainConfig, waveform: WaveformSpec, times, halfwidth: float) -> int:
    # the trapezoid sum is periodic in time with period 2 pi / (v_g dk);
    # keep every emitter/time offset well inside half a period
    v = config.v_g
    d = config.positions
    offsets = np.abs(d[None, :] - waveform.x0 - v * np.asarray(times)[:, None])
    span = float(offsets.max()) + 40.0 * v * waveform.tau
    dk_max = 2 * np.pi / (4.0 * span)
    return int(np.ceil(2 * halfwidth / dk_max)) + 1


def converged_propagator(config, waveform, times, *, points=DEFAULT_POINTS,
                         halfwidth=None, tol=DEFAULT_TOL, max_doublings=MAX_DOUBLINGS):
    """Return a propagator whose probabilities on ``times`` are stable to ``tol``.

    Each refinement doubles the number of grid points together with the
    half-width, which probes the truncated Lorentzian tails.  The finer of the
    last two grids is returned.
    """
    validate(config)
    if not waveform.x0 < config.positions[0]:
        raise ValueError(f"wavepacket edge x0 = {waveform.x0} must lie left of d_1 = {config.positions[0]}")
    times = np.asarray(times, dtype=float)
    if halfwidth is None:
        halfwidth = DEFAULT_HALFWIDTH / (config.v_g * waveform.tau)
    points = max(points, _min_points(config, waveform, times, halfwidth))
    prop = _Propagator(config, waveform, KGrid.centered(waveform.k0, halfwidth, points))
    prob = np.abs(prop(times)) ** 2
    change = np.inf
    for _ in range(max_doublings):
        points, halfwidth = 2 * points - 1, 2 * halfwidth
        finer = _Propagator(config, waveform, KGrid.centered(waveform.k0, halfwidth, points))
        prob_f = np.abs(finer(times)) ** 2
        change = float(np.max(np.abs(prob_f - prob))) if prob.size else 0.0
        log.debug("k-grid %d points, half-width %g: max change %.3g", points, halfwidth, change)
        prop, prob = finer, prob_f
        if change < tol:
            return prop
    raise QuadratureNotConverged(
        f"probabilities still change by {change:.3g} after {max_doublings} grid doublings")


def _local_dips(p: np.ndarray, floor: float) -> np.ndarray:
    """Interior local minima flanked on both sides by samples above ``floor``."""
    if p.size < 3:
        return np.array([], dtype=int)
    inner = np.flatnonzero((p[1:-1] < p[:-2]) & (p[1:-1] <= p[2:])) + 1
    left = np.maximum.accumulate(p)
    right = np.maximum.accumulate(p[::-1])[::-1]
    return inner[(left[inner] > floor) & (right[inner] > floor)]


def _refine_minima(prop: _Propagator, times: np.ndarray) -> np.ndarray:
    amps = prop(times)
    p = np.abs(amps) ** 2
    extra = []
    for j in range(p.shape[1]):
        floor = 1e-3 * p[:, j].max()
        for i in _local_dips(p[:, j], floor):
            res = minimize_scalar(
                lambda s: float(np.abs(prop([s])[0, j]) ** 2),
                bounds=(times[i - 1], times[i + 1]), method="bounded",
                options={"xatol": 1e-10 * max(1.0, abs(times[i]))},
            )
            extra.append(res.x)
    return np.unique(np.concatenate([times, extra]))


def _concurrences(amplitudes: np.ndarray) -> dict:
    n = amplitudes.shape[1]
    pairs = list(combinations(range(1, n + 1), 2))
    out = {pair: np.zeros(len(amplitudes)) for pair in pairs}
    for i, a in enumerate(amplitudes):
        total = float(np.sum(np.abs(a) ** 2))
        # excitation not on the emitters leaves them in |g...g>
        rho = density_from_amplitudes(a / np.sqrt(max(total, 1.0)), max(0.0, 1.0 - total))
        for pair in pairs:
            out[pair][i] = concurrence(partial_trace(rho, pair))
    return out


def evolve(config: ChainConfig, waveform: WaveformSpec, times, *,
           points: int = DEFAULT_POINTS, halfwidth: float | None = None,
           tol: float = DEFAULT_TOL, max_doublings: int = MAX_DOUBLINGS,
           refine_minima: bool = False) -> TimeSeries:
    """Emitter amplitudes, excitation probabilities and pairwise concurrences.

    Concurrences are those of the emitters' reduced state, i.e. the
    single-excitation part ``xi_j(t)`` plus the ground state weighted by the
    probability that the excitation is elsewhere.  For this state
    ``C_jl = 2 |xi_j| |xi_l|``.

    Args:
        times: Increasing sample times.
        refine_minima: Insert extra samples at the exact local minima of every
            ``|xi_j(t)|**2``.  Zeros of an amplitude are instants, so a fixed
            grid almost never lands on them.

    Raises:
        QuadratureNotConverged: if the probabilities keep changing by more
            than ``tol`` under k-grid refinement.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be a strictly increasing 1-D grid")
    prop = converged_propagator(config, waveform, times, points=points,
                                halfwidth=halfwidth, tol=tol, max_doublings=max_doublings)
    if refine_minima:
        times = _refine_minima(prop, times)
    amps = prop(times)
    return TimeSeries(times, amps, _concurrences(amps), grid_points=prop.grid.k.size)


def default_times(config: ChainConfig, waveform: WaveformSpec, points: int = 2001) -> np.ndarray:
    """Grid from shortly before the packet edge reaches the chain until it has decayed."""
    v = config.v_g
    d = config.positions
    rate = float(np.sum(config.waveguide_rates + config.dissipations))
    slow = max(waveform.tau, 1.0 / rate) if rate > 0 else waveform.tau
    start = (d[0] - waveform.x0) / v - 5.0 * waveform.tau
    stop = (d[-1] - waveform.x0) / v + 25.0 * slow
    return np.linspace(start, stop, points)


def _peak(prop: _Propagator, times: np.ndarray, column=None) -> float:
    def value(s):
        p = np.abs(prop(s)) ** 2
        return p.sum(axis=1) if column is None else p[:, column]

    p = value(times)
    i = int(np.argmax(p))
    lo, hi = times[max(i - 1, 0)], times[min(i + 1, times.size - 1)]
    res = minimize_scalar(lambda s: -float(value([s])[0]), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-9 * max(1.0, abs(times[i]))})
    return float(max(p[i], -res.fun))


def peak_success_probability(config: ChainConfig, waveform: WaveformSpec, times=None,
                             *, tol: float = DEFAULT_TOL) -> float:
    """Largest total emitter excitation ``max_t sum_j |xi_j(t)|**2``.

    The sampled maximum is polished by a bounded scalar search between the
    neighbouring samples.
    """
    if np.all(config.couplings == 0):
        return 0.0
    times = default_times(config, waveform) if times is None else np.asarray(times, float)
    prop = converged_propagator(config, waveform, times, tol=tol)
    return _peak(prop, times)


def peak_excitations(config: ChainConfig, waveform: WaveformSpec, times=None,
                     *, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Largest excitation probability reached by each emitter separately."""
    if np.all(config.couplings == 0):
        return np.zeros(config.n)
    times = default_times(config, waveform) if times is None else np.asarray(times, float)
    prop = converged_propagator(config, waveform, times, tol=tol)
    return np.array([_peak(prop, times, j) for j in range(config.n)])


def detect_sudden_death(series: TimeSeries, pair, threshold: float = DEFAULT_DEATH_THRESHOLD):
    """Intervals where a pair's concurrence drops below ``threshold`` and then revives.

    A run of sub-threshold samples counts only if samples at or above the
    threshold exist on both sides of it; a final decay without revival (or
    the quiet stretch before the photon arrives) is not an event.
    """
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    pair = tuple(sorted(pair))
    if pair not in series.concurrence:
        raise UnknownPair(pair)
    c = np.asarray(series.concurrence[pair])
    t = series.times
    below = c < threshold
    events = []
    i, n = 0, c.size
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j < n and below[j]:
            j += 1
        if i > 0 and j < n:
            events.append(SuddenDeathEvent(pair, float(t[i]), float(t[j])))
        i = j
    return events
