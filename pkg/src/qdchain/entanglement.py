"""Dense density matrices over labelled qubits and entanglement measures.

Convention: ``|g> = |0>``, ``|e> = |1>``, and the order of ``labels`` is the
tensor-product order with the first label as the most significant qubit, so
``|e g g>`` is basis index 4 for three qubits.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyKeepSet, UnknownLabel, WrongQubitCount

MAX_QUBITS = 10
#: Partial-transpose eigenvalues above ``-EIG_TOL`` count as non-negative.
EIG_TOL = 1e-12

_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass(frozen=True)
class DensityMatrix:
    labels: tuple
    matrix: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        m = np.asarray(self.matrix, dtype=complex)
        dim = 2 ** len(labels)
        if m.shape != (dim, dim):
            raise ValueError(f"{len(labels)} qubits need a {dim}x{dim} matrix, got {m.shape}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def check(self, tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
        """Raise ValueError unless Hermitian, unit trace and positive semidefinite."""
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > tol:
            raise ValueError(f"trace is {np.trace(m)}, not 1")
        if np.linalg.eigvalsh(m)[0] < -psd_tol:
            raise ValueError("density matrix has a negative eigenvalue")


def single_excitation_vector(amplitudes) -> np.ndarray:
    """Embed single-excitation amplitudes ``c_j`` into the full 2**N space."""
    c = np.asarray(amplitudes, dtype=complex).ravel()
    n = c.size
    if n > MAX_QUBITS:
        raise ValueError(f"dense representation capped at {MAX_QUBITS} qubits, got {n}")
    psi = np.zeros(2**n, dtype=complex)
    psi[1 << np.arange(n - 1, -1, -1)] = c
    return psi


def density_from_amplitudes(amplitudes, ground_weight: float = 0.0, labels=None) -> DensityMatrix:
    """``|psi><psi| + ground_weight |g..g><g..g|`` with ``psi`` in the single-excitation sector.

    The amplitudes need not be normalized; the caller chooses ``ground_weight``
    so the trace is one (e.g. the probability that the excitation is still in
    the waveguide).
    """
    psi = single_excitation_vector(amplitudes)
    rho = np.outer(psi, psi.conj())
    rho[0, 0] += ground_weight
    n = int(np.log2(psi.size))
    labels = tuple(range(1, n + 1)) if labels is None else tuple(labels)
    return DensityMatrix(labels, rho)


def density_from_pure(state, labels=None) -> DensityMatrix:
    """Projector onto a normalized single-excitation state (labels 1..N by default)."""
    return density_from_amplitudes(getattr(state, "amplitudes", state), 0.0, labels)


def partial_trace(rho: DensityMatrix, keep: Iterable) -> DensityMatrix:
    """Reduced state on ``keep``; the kept labels stay in their original order."""
    keep = set(keep)
    if not keep:
        raise EmptyKeepSet("partial trace needs at least one qubit to keep")
    for lab in keep:
        rho.index(lab)
    n = rho.n
    traced = [i for i, lab in enumerate(rho.labels) if lab not in keep]
    t = rho.matrix.reshape((2,) * (2 * n))
    m = n
    for i in sorted(traced, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + m)
        m -= 1
    kept = tuple(lab for lab in rho.labels if lab in keep)
    dim = 2 ** len(kept)
    return DensityMatrix(kept, t.reshape(dim, dim))


def partial_transpose(rho: DensityMatrix, subsystem) -> np.ndarray:
    """Transpose on one qubit's indices."""
    i = rho.index(subsystem)
    n = rho.n
    t = rho.matrix.reshape((2,) * (2 * n))
    t = np.swapaxes(t, i, n + i)
    return t.reshape(2**n, 2**n)


def negativity(rho: DensityMatrix, subsystem) -> float:
    """Sum of |negative eigenvalues| of the partial transpose on ``subsystem``."""
    ev = np.linalg.eigvalsh(partial_transpose(rho, subsystem))
    return float(-np.sum(ev[ev < -EIG_TOL]))


def schmidt_negativity(state, subsystem: int, labels: Sequence | None = None) -> float:
    """Pure-state negativity from the Schmidt coefficients of one qubit vs the rest.

    Equals ``sum_{i<j} s_i s_j``; serves as an independent check of
    :func:`negativity` on pure states.
    """
    c = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    n = c.size
    labels = list(range(1, n + 1)) if labels is None else list(labels)
    try:
        i = labels.index(subsystem)
    except ValueError:
        raise UnknownLabel(subsystem) from None
    psi = single_excitation_vector(c).reshape((2,) * n)
    psi = np.moveaxis(psi, i, 0).reshape(2, -1)
    s = np.linalg.svd(psi, compute_uv=False)
    return float(0.5 * (np.sum(s) ** 2 - np.sum(s**2)))


def tripartite_negativity(rho: DensityMatrix) -> float:
    """Geometric mean of the three one-vs-rest negativities."""
    if rho.n != 3:
        raise WrongQubitCount(f"tripartite negativity needs 3 qubits, got {rho.n}")
    prod = np.prod([negativity(rho, lab) for lab in rho.labels])
    return float(np.cbrt(prod))


def _wootters_singular_values(rho: DensityMatrix) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho @ rho_tilde``, descending.

    With ``rho = sum_i |v_i><v_i|`` (subnormalized eigenvectors), these are
    the singular values of the symmetric matrix ``v_i^T (sy x sy) v_j``.
    Taking singular values directly avoids square roots of round-off-sized
    eigenvalues, which would otherwise leak ~1e-8 errors into the result.
    """
    if rho.n != 2:
        raise WrongQubitCount(f"concurrence needs 2 qubits, got {rho.n}")
    w, U = np.linalg.eigh(rho.matrix)
    keep = w > 64 * np.finfo(float).eps * max(w[-1], 0.0)
    V = U[:, keep] * np.sqrt(w[keep])
    tau = V.T @ _SYSY @ V
    s = np.linalg.svd(tau, compute_uv=False) if tau.size else np.zeros(0)
    return np.concatenate([s, np.zeros(4 - s.size)])


def concurrence_spectrum(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues of ``rho @ rho_tilde`` in descending order (all >= 0)."""
    return _wootters_singular_values(rho) ** 2


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit state."""
    s = _wootters_singular_values(rho)
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


def pairwise_concurrences(rho: DensityMatrix) -> dict:
    """Concurrence of every qubit pair, keyed by label pair."""
    return {(a, b): concurrence(partial_trace(rho, (a, b)))
            for a, b in combinations(rho.labels, 2)}
