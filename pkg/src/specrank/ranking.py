"""Rank permutation of a power spectrum and energy-quantile truncation.

Ranking replaces the spectrum's values with their order statistics: rank 1
names the strongest bin (under the default descending direction), and the
inverse permutation lists, rank by rank, which grid bin holds each rank.
Truncation keeps the smallest prefix of top ranks whose cumulative power
reaches a fraction ``q`` of the total.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, SignalError
from .spectrum import PowerSpectrum


class RankDirection(enum.Enum):
    """Whether rank 1 is the largest (descending, default) or smallest bin."""

    DESCENDING = "desc"
    ASCENDING = "asc"


@dataclass
class RankPermutation:
    """The permutation pairing grid index with power rank.

    Both arrays hold 1-based values: ``rank_of_grid[k - 1]`` is the rank of
    grid bin k (1 = best), and ``grid_of_rank[r - 1]`` is the grid bin holding
    rank r. The two are mutually inverse.
    """

    n: int
    rank_of_grid: np.ndarray
    grid_of_rank: np.ndarray

    def __post_init__(self):
        self.rank_of_grid = np.asarray(self.rank_of_grid, dtype=np.int64)
        self.grid_of_rank = np.asarray(self.grid_of_rank, dtype=np.int64)
        if self.n < 1 or self.rank_of_grid.shape != (self.n,) or self.grid_of_rank.shape != (self.n,):
            raise SignalError("rank permutation arrays must both have length n")
        expected = np.arange(1, self.n + 1)
        if not np.array_equal(np.sort(self.grid_of_rank), expected):
            raise SignalError("grid_of_rank is not a permutation of 1..n")
        if not np.array_equal(self.rank_of_grid[self.grid_of_rank - 1], expected):
            raise SignalError("rank_of_grid and grid_of_rank are not mutually inverse")


@dataclass
class TruncationResult:
    """Minimal top-rank prefix reaching the requested energy fraction."""

    L: int
    retained_ranks: np.ndarray  # grid_of_rank[:L], 1-based grid indices
    q: float


def rank_spectrum(spectrum: PowerSpectrum,
                  direction: RankDirection = RankDirection.DESCENDING) -> RankPermutation:
    """Rank the spectrum bins and return the permutation pair.

    Ties are broken deterministically: among equal values the lower grid
    index receives the better (smaller) rank.
    """
    v = spectrum.values
    n = v.size
    if n < 2:
        raise SignalError(f"ranking needs at least 2 spectrum bins, got {n}")
    key = -v if direction is RankDirection.DESCENDING else v
    order = np.argsort(key, kind="stable")  # stable sort keeps grid order among ties
    grid_of_rank = order + 1
    rank_of_grid = np.empty(n, dtype=np.int64)
    rank_of_grid[order] = np.arange(1, n + 1)
    return RankPermutation(n=n, rank_of_grid=rank_of_grid, grid_of_rank=grid_of_rank)


def _compensated_cumsum(values: np.ndarray) -> np.ndarray:
    """Neumaier running sum, reported prefix by prefix.

    Keeps the truncation cut stable against cancellation noise; the final
    entry doubles as the total so the q = 1 comparison is exact. The trailing
    maximum-accumulate guards against sub-ulp non-monotonicity.
    """
    out = np.empty(values.size, dtype=np.float64)
    s = 0.0
    c = 0.0
    for i, x in enumerate(values.tolist()):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    np.maximum.accumulate(out, out=out)
    return out


def truncate_by_energy(spectrum: PowerSpectrum, perm: RankPermutation, q: float) -> TruncationResult:
    """Smallest L whose top-L ranked bins carry at least q of the total power.

    The cumulative sum runs in descending-rank order with compensated
    summation, and the comparison is a plain >= with no epsilon.
    """
    if not 0.0 < q <= 1.0:
        raise ValueError(f"q must satisfy 0 < q <= 1, got {q}")
    if perm.n != spectrum.n:
        raise SignalError("permutation and spectrum sizes disagree")
    ranked = spectrum.values[perm.grid_of_rank - 1]
    cum = _compensated_cumsum(ranked)
    total = cum[-1]
    if total <= 0.0:
        raise NumericError("zero total power: energy truncation undefined")
    L = int(np.searchsorted(cum, q * total, side="left")) + 1
    return TruncationResult(L=L, retained_ranks=perm.grid_of_rank[:L].copy(), q=q)
