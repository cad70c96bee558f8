"""Ordinal irregularity descriptors of a ranked spectrum.

Two scalar descriptors summarize how the ranked bins are laid out on the
frequency grid:

* circular difference: mean absolute grid distance between consecutively
  ranked bins, closed into a cycle by the last-to-first term. Translation
  of the whole layout leaves it unchanged; shuffling does not.
* correspondence difference: mean absolute displacement of each rank's
  grid location from the perfectly ordered layout where rank r sits at
  grid bin r. Zero exactly for that ordered case.

Both are computed over the first L ranked bins when an energy truncation is
in effect; the 1/L normalization and the circular closing term are kept, and
correspondence compares the raw grid index against the rank label 1..L.

The full pairwise layout is captured by the rank-distance matrix
M[i][j] = |grid_of_rank[i] - grid_of_rank[j]|, a symmetric matrix with zero
trace whose eigenvalues give a richer, rotation-free summary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, SignalError
from .ranking import RankDirection, RankPermutation, rank_spectrum, truncate_by_energy
from .spectrum import ENTROPY_LOG_BASE, Signal, power_spectrum, spectral_entropy


@dataclass
class DescriptorSet:
    """Descriptor values for one analysis frame."""

    cid: float
    cod: float
    spectral_entropy: float
    L_used: int
    q_used: float


@dataclass
class DistanceMatrix:
    """Symmetric matrix of absolute grid distances between ranked bins."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.int64)
        m = self.entries
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise SignalError("distance matrix must be square and non-empty")
        if not np.array_equal(m, m.T):
            raise SignalError("distance matrix must be symmetric")
        if np.any(np.diag(m) != 0):
            raise SignalError("distance matrix diagonal must be zero")
        if np.any(m < 0) or np.any(m > m.shape[0] - 1):
            raise SignalError("distance matrix entries must lie in [0, n-1]")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _check_l(perm: RankPermutation, L: int) -> None:
    if not 1 <= L <= perm.n:
        raise ValueError(f"L must lie in [1, {perm.n}], got {L}")


def circular_difference(perm: RankPermutation, L: int | None = None) -> float:
    """Mean absolute grid distance between consecutively ranked bins, cyclic.

    ``L`` restricts the computation to the first L ranks (default: all).
    L = 1 gives 0 by the empty-sum convention.
    """
    if L is None:
        L = perm.n
    _check_l(perm, L)
    if L == 1:
        return 0.0
    g = perm.grid_of_rank[:L]
    adjacent = int(np.abs(np.diff(g)).sum())
    closing = int(abs(int(g[-1]) - int(g[0])))
    return (closing + adjacent) / L


def correspondence_difference(perm: RankPermutation, L: int | None = None) -> float:
    """Mean absolute displacement of rank r's grid bin from bin r itself."""
    if L is None:
        L = perm.n
    _check_l(perm, L)
    g = perm.grid_of_rank[:L]
    return int(np.abs(g - np.arange(1, L + 1)).sum()) / L


def distance_matrix(perm: RankPermutation) -> DistanceMatrix:
    """Pairwise |grid_of_rank[i] - grid_of_rank[j]| over all rank pairs."""
    g = perm.grid_of_rank
    return DistanceMatrix(np.abs(g[:, None] - g[None, :]))


def distance_matrix_eigenvalues(m: DistanceMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of the distance matrix, sorted descending, plus partial sums.

    The matrix is real symmetric with zero trace, so the eigenvalues are real
    and sum to zero up to roundoff.
    """
    try:
        w = np.linalg.eigvalsh(m.entries.astype(np.float64))
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed to converge: {exc}") from exc
    w = w[::-1].copy()
    return w, np.cumsum(w)


def analyze(signal: Signal,
            q: float = 1.0,
            direction: RankDirection = RankDirection.DESCENDING,
            log_base: float = ENTROPY_LOG_BASE) -> DescriptorSet:
    """Full pipeline for one frame: spectrum, ranking, truncation, descriptors.

    Both descriptors are evaluated over the truncated prefix of length L
    chosen by the energy fraction ``q``; spectral entropy is always taken
    over the full, untruncated spectrum.
    """
    spec = power_spectrum(signal)
    perm = rank_spectrum(spec, direction)
    trunc = truncate_by_energy(spec, perm, q)
    return DescriptorSet(
        cid=circular_difference(perm, trunc.L),
        cod=correspondence_difference(perm, trunc.L),
        spectral_entropy=spectral_entropy(spec, log_base),
        L_used=trunc.L,
        q_used=q,
    )
