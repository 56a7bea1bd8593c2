"""Parameter records for a chain of two-level emitters on a 1-D waveguide.

Units: hbar = 1 and, by default, the group velocity ``v_g = 1``.  Rates
(detuning, dissipation) are angular frequencies; couplings ``V`` carry the
dimension sqrt(rate * velocity) so that ``2 V**2 / v_g`` is a rate.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import (
    EmptyChain,
    NegativeCoupling,
    NegativeDissipation,
    NonIncreasingPositions,
    NonPositiveVelocity,
    NonPositiveWavenumber,
)


@dataclass(frozen=True)
class EmitterParams:
    """One emitter.

    Attributes:
        position: Location ``d`` along the waveguide (length).
        coupling: Waveguide coupling ``V`` (real, >= 0).
        detuning: ``delta = E - omega`` at the chain's reference wavenumber.
        dissipation: Loss rate ``Gamma`` into non-guided channels (>= 0).
    """

    position: float
    coupling: float
    detuning: float = 0.0
    dissipation: float = 0.0


@dataclass(frozen=True)
class ChainConfig:
    """An ordered chain of emitters probed at wavenumber ``k``.

    The detunings stored on the emitters refer to ``k``; use
    :meth:`at_wavenumber` to move to a different photon energy.
    """

    emitters: tuple[EmitterParams, ...]
    k: float
    v_g: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "emitters", tuple(self.emitters))

    @classmethod
    def from_arrays(
        cls,
        positions: Sequence[float],
        couplings: Sequence[float] | float,
        detunings: Sequence[float] | float = 0.0,
        dissipations: Sequence[float] | float = 0.0,
        *,
        k: float,
        v_g: float = 1.0,
    ) -> "ChainConfig":
        n = len(positions)
        cols = [np.broadcast_to(np.asarray(c, dtype=float), (n,))
                for c in (positions, couplings, detunings, dissipations)]
        emitters = tuple(EmitterParams(float(d), float(V), float(dl), float(g))
                         for d, V, dl, g in zip(*cols))
        return cls(emitters, float(k), float(v_g))

    @classmethod
    def from_phases(
        cls,
        phases: Sequence[float],
        couplings: Sequence[float] | float,
        detunings: Sequence[float] | float = 0.0,
        dissipations: Sequence[float] | float = 0.0,
        *,
        k: float,
        v_g: float = 1.0,
    ) -> "ChainConfig":
        """Build a chain whose positions are given as ``k d / 2 pi``.

        ``phases = (0, 1, 2)`` puts the emitters one wavelength apart,
        ``(0, 0.25, 0.5)`` a quarter wavelength apart.
        """
        positions = 2.0 * np.pi * np.asarray(phases, dtype=float) / k
        return cls.from_arrays(positions, couplings, detunings, dissipations,
                               k=k, v_g=v_g)

    @property
    def n(self) -> int:
        return len(self.emitters)

    @property
    def positions(self) -> np.ndarray:
        return np.array([e.position for e in self.emitters], dtype=float)

    @property
    def couplings(self) -> np.ndarray:
        return np.array([e.coupling for e in self.emitters], dtype=float)

    @property
    def detunings(self) -> np.ndarray:
        return np.array([e.detuning for e in self.emitters], dtype=float)

    @property
    def dissipations(self) -> np.ndarray:
        return np.array([e.dissipation for e in self.emitters], dtype=float)

    @property
    def waveguide_rates(self) -> np.ndarray:
        return 2.0 * self.couplings**2 / self.v_g

    def at_wavenumber(self, k: float) -> "ChainConfig":
        """Same chain probed at ``k``; every detuning shifts by ``v_g (k - self.k)``."""
        shift = self.v_g * (k - self.k)
        emitters = tuple(replace(e, detuning=e.detuning + shift)
                         for e in self.emitters)
        return ChainConfig(emitters, float(k), self.v_g)

    def with_emitters(self, **columns) -> "ChainConfig":
        """Return a copy with whole parameter columns replaced.

        Keyword names are the :class:`EmitterParams` field names; each value
        is a sequence with one entry per emitter.
        """
        emitters = list(self.emitters)
        for name, values in columns.items():
            values = list(values)
            if len(values) != len(emitters):
                raise ValueError(f"{name}: expected {len(emitters)} values, got {len(values)}")
            emitters = [replace(e, **{name: float(v)}) for e, v in zip(emitters, values)]
        return ChainConfig(tuple(emitters), self.k, self.v_g)


def waveguide_rate(emitter: EmitterParams, v_g: float = 1.0) -> float:
    """Decay rate of one emitter into the waveguide, ``2 V**2 / v_g``."""
    if v_g <= 0:
        raise NonPositiveVelocity(f"group velocity must be positive, got {v_g}")
    return 2.0 * emitter.coupling**2 / v_g


def validate(config: ChainConfig) -> None:
    """Raise the first violated invariant of ``config``; return None if it is valid."""
    if config.v_g <= 0 or not np.isfinite(config.v_g):
        raise NonPositiveVelocity(f"group velocity must be positive, got {config.v_g}")
    if config.k <= 0 or not np.isfinite(config.k):
        raise NonPositiveWavenumber(f"wavenumber must be positive, got {config.k}")
    if config.n == 0:
        raise EmptyChain("a chain needs at least one emitter")
    for j, e in enumerate(config.emitters, start=1):
        if not e.coupling >= 0:
            raise NegativeCoupling(f"emitter {j}: coupling V = {e.coupling} < 0")
        if not e.dissipation >= 0:
            raise NegativeDissipation(f"emitter {j}: dissipation = {e.dissipation} < 0")
    d = config.positions
    bad = np.flatnonzero(np.diff(d) <= 0)
    if bad.size:
        j = int(bad[0]) + 1
        raise NonIncreasingPositions(
            f"emitter {j + 1} at {d[j]} does not lie right of emitter {j} at {d[j - 1]}")
