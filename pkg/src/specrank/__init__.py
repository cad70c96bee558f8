"""Rank-order structure of power spectra.

Spectral entropy ignores where the power sits on the frequency grid: any
shuffle of the bin values scores the same. This package extracts the
complementary ordinal information by ranking the bins and summarizing the
layout of the ranking with two scalar descriptors (circular difference and
correspondence difference), their rank-distance-matrix spectrum, Monte Carlo
null distributions, sliding-window monitoring traces, and rank-sum group
comparison. A CLI fronts the whole pipeline for CSV and WAV input.
"""
from .descriptors import (
    DescriptorSet,
    DistanceMatrix,
    analyze,
    circular_difference,
    correspondence_difference,
    distance_matrix,
    distance_matrix_eigenvalues,
)
from .errors import NumericError, SignalError
from .monitor import (
    GUARD_EPSILON,
    MonitorConfig,
    MonitorTrace,
    frame_count,
    local_energy,
    monitoring_value,
    sliding_descriptors,
)
from .nulldist import (
    NullDistributionSummary,
    enumerate_null_exact,
    null_mean_cid,
    null_mean_cod,
    qq_points,
    sample_null,
)
from .ranking import (
    RankDirection,
    RankPermutation,
    TruncationResult,
    rank_spectrum,
    truncate_by_energy,
)
from .sigio import read_csv_signal, read_wav_signal
from .spectrum import (
    ENTROPY_LOG_BASE,
    PowerSpectrum,
    Signal,
    dft_naive,
    power_spectrum,
    spectral_entropy,
)
from .stats import GroupComparison, RankSumResult, group_compare, wilcoxon_rank_sum

__version__ = "0.1.0"

__all__ = [
    "DescriptorSet",
    "DistanceMatrix",
    "ENTROPY_LOG_BASE",
    "GUARD_EPSILON",
    "GroupComparison",
    "MonitorConfig",
    "MonitorTrace",
    "NullDistributionSummary",
    "NumericError",
    "PowerSpectrum",
    "RankDirection",
    "RankPermutation",
    "RankSumResult",
    "Signal",
    "SignalError",
    "TruncationResult",
    "analyze",
    "circular_difference",
    "correspondence_difference",
    "dft_naive",
    "distance_matrix",
    "distance_matrix_eigenvalues",
    "enumerate_null_exact",
    "frame_count",
    "group_compare",
    "local_energy",
    "monitoring_value",
    "null_mean_cid",
    "null_mean_cod",
    "power_spectrum",
    "qq_points",
    "rank_spectrum",
    "read_csv_signal",
    "read_wav_signal",
    "sample_null",
    "sliding_descriptors",
    "spectral_entropy",
    "truncate_by_energy",
    "wilcoxon_rank_sum",
]
