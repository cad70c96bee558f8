"""Sliding-window descriptor tracking and the combined monitoring value.

A window slides over a long signal; each frame runs the full descriptor
pipeline, and local energy (the standard deviation of the trailing samples)
is folded in as log10(1 + LE) / log10(descriptor). The combined value is
undefined where the descriptor divisor's log vanishes, marked NaN in the
trace and exported as an empty field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .descriptors import analyze
from .errors import SignalError
from .ranking import RankDirection
from .spectrum import ENTROPY_LOG_BASE, Signal

# The combined value divides by log10(descriptor); values this close to 1
# (or below) are treated as undefined rather than blowing up.
GUARD_EPSILON = 1e-9


@dataclass
class MonitorConfig:
    """Sliding-window parameters.

    ``le_window`` defaults to the analysis window length, so local energy is
    the standard deviation of exactly the samples in the frame.
    """

    window: int
    step: int = 1
    q: float = 1.0
    le_window: int | None = None

    def __post_init__(self):
        if self.window < 4 or self.window % 2 != 0:
            raise ValueError(f"window must be an even integer >= 4, got {self.window}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if not 0.0 < self.q <= 1.0:
            raise ValueError(f"q must satisfy 0 < q <= 1, got {self.q}")
        if self.le_window is None:
            self.le_window = self.window
        elif self.le_window < 2:
            raise ValueError(f"le_window must be >= 2, got {self.le_window}")


@dataclass
class MonitorTrace:
    """Per-frame descriptor, energy, and combined monitoring sequences.

    All arrays share one length (the frame count). NaN marks undefined
    entries: combined values whose guard fired, or local energy for frames
    that start before a full trailing-energy window exists.
    """

    frame_start_indices: np.ndarray
    cid: np.ndarray
    cod: np.ndarray
    entropy: np.ndarray
    local_energy: np.ndarray
    combined_cid: np.ndarray
    combined_cod: np.ndarray

    def __len__(self) -> int:
        return self.frame_start_indices.size


def frame_count(total: int, window: int, step: int) -> int:
    """Number of frames a window/step pair yields on a length-``total`` signal."""
    if total < window:
        raise SignalError(f"signal length {total} is shorter than the window {window}")
    return (total - window) // step + 1


def local_energy(signal: Signal, at: int, le_window: int) -> float:
    """Population standard deviation of the ``le_window`` samples ending at ``at``."""
    if le_window < 2:
        raise ValueError(f"le_window must be >= 2, got {le_window}")
    if at >= len(signal):
        raise SignalError(f"index {at} is outside the signal")
    if at < le_window - 1:
        raise SignalError(f"insufficient history: index {at} has fewer than {le_window} trailing samples")
    segment = signal.samples[at - le_window + 1: at + 1]
    return float(segment.std())


def monitoring_value(le: float, descriptor: float) -> float:
    """log10(1 + LE) / log10(descriptor), or NaN when the divisor is guarded.

    The divisor vanishes as the descriptor approaches 1, so values at or
    below 1 + GUARD_EPSILON yield NaN (a marker, not an error).
    """
    if le < 0:
        raise ValueError(f"local energy must be non-negative, got {le}")
    if not descriptor > 1.0 + GUARD_EPSILON:
        return math.nan
    return math.log10(1.0 + le) / math.log10(descriptor)


def sliding_descriptors(signal: Signal, cfg: MonitorConfig,
                        direction: RankDirection = RankDirection.DESCENDING,
                        log_base: float = ENTROPY_LOG_BASE) -> MonitorTrace:
    """Run the descriptor pipeline on every frame of a right-aligned sliding window.

    Frames start at 0, step, 2*step, ...; each covers ``cfg.window`` samples
    and is analyzed exactly as a standalone signal would be, with energy
    truncation at ``cfg.q``. Local energy is taken over the ``cfg.le_window``
    samples ending at the frame's last sample (NaN while history is short).
    """
    samples = signal.samples
    n_frames = frame_count(samples.size, cfg.window, cfg.step)
    starts = np.arange(n_frames, dtype=np.int64) * cfg.step

    cid = np.empty(n_frames)
    cod = np.empty(n_frames)
    entropy = np.empty(n_frames)
    le = np.empty(n_frames)
    combined_cid = np.empty(n_frames)
    combined_cod = np.empty(n_frames)

    for idx, start in enumerate(starts.tolist()):
        frame = Signal(samples[start: start + cfg.window], signal.sample_rate_hz)
        d = analyze(frame, cfg.q, direction=direction, log_base=log_base)
        last = start + cfg.window - 1
        if last >= cfg.le_window - 1:
            energy = local_energy(signal, last, cfg.le_window)
        else:
            energy = math.nan
        cid[idx] = d.cid
        cod[idx] = d.cod
        entropy[idx] = d.spectral_entropy
        le[idx] = energy
        if math.isnan(energy):
            combined_cid[idx] = math.nan
            combined_cod[idx] = math.nan
        else:
            combined_cid[idx] = monitoring_value(energy, d.cid)
            combined_cod[idx] = monitoring_value(energy, d.cod)

    return MonitorTrace(
        frame_start_indices=starts,
        cid=cid,
        cod=cod,
        entropy=entropy,
        local_energy=le,
        combined_cid=combined_cid,
        combined_cod=combined_cod,
    )
