"""Raw-periodogram power spectrum estimation and the spectral-entropy baseline.

The transform convention is the plain unnormalized forward DFT of an
even-length real signal. The power spectrum keeps the squared moduli of the
first half of the coefficients (conjugate symmetry makes the second half
redundant), so a length-2N signal yields N power values on the normalized
frequency grid (k - 1) * pi / N for k = 1..N, DC bin included.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, SignalError

# Entropy is reported in nats by default, so a flat N-bin spectrum scores ln N.
ENTROPY_LOG_BASE = math.e


@dataclass
class Signal:
    """Evenly spaced real-valued samples plus optional sampling metadata.

    ``sample_rate_hz`` is informational only; no computation depends on it.
    """

    samples: np.ndarray
    sample_rate_hz: float | None = None

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise SignalError("signal must be a non-empty 1-D sample vector")
        if not np.all(np.isfinite(self.samples)):
            raise SignalError("signal contains non-finite samples (NaN or Inf)")
        if self.sample_rate_hz is not None and not self.sample_rate_hz > 0:
            raise SignalError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")

    def __len__(self) -> int:
        return self.samples.size


@dataclass
class PowerSpectrum:
    """First-half squared-modulus DFT values on the normalized frequency grid."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size == 0:
            raise SignalError("power spectrum must be a non-empty 1-D vector")
        if not np.all(np.isfinite(self.values)):
            raise SignalError("power spectrum contains non-finite values")
        if np.any(self.values < 0):
            raise SignalError("power spectrum values must be non-negative")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        """Normalized frequencies of the bins: k * pi / n for k = 0..n-1."""
        return np.arange(self.n) * (math.pi / self.n)


def dft_naive(signal: Signal) -> np.ndarray:
    """Direct term-by-term evaluation of the forward DFT of an even-length signal.

    Deliberately quadratic: every output coefficient is accumulated as the
    literal sum over input samples. Serves as the independent oracle against
    which the fast transform path is checked.
    """
    s = signal.samples
    length = s.size
    if length % 2 != 0:
        raise SignalError("DFT is defined here for even-length input; truncate the trailing sample first")
    out = np.empty(length, dtype=np.complex128)
    step = -2.0 * math.pi / length
    for k in range(length):
        acc = 0j
        for i in range(length):
            acc += s[i] * cmath.exp(1j * step * i * k)
        out[k] = acc
    return out


def power_spectrum(signal: Signal) -> PowerSpectrum:
    """Squared moduli of the first half of the signal's DFT.

    Requires an even length of at least 4 samples (two bins is the smallest
    rankable spectrum). Uses the fast transform; equivalence with
    :func:`dft_naive` is part of the test contract.
    """
    s = signal.samples
    if s.size % 2 != 0:
        raise SignalError("power spectrum needs an even-length signal; truncate the trailing sample first")
    if s.size < 4:
        raise SignalError(f"power spectrum needs at least 4 samples, got {s.size}")
    coeffs = np.fft.fft(s)
    half = coeffs[: s.size // 2]
    return PowerSpectrum(np.abs(half) ** 2)


def spectral_entropy(spectrum: PowerSpectrum, log_base: float = ENTROPY_LOG_BASE) -> float:
    """Shannon entropy of the power-normalized spectrum.

    Bins are divided by total power to form probability proxies; zero bins
    contribute nothing (the 0 * log 0 = 0 limit). The result lies in
    [0, log N]: zero for a single-line spectrum, log N for a flat one.

    Raises :class:`NumericError` when total power is zero, rather than
    returning NaN.
    """
    if log_base <= 0 or log_base == 1.0:
        raise ValueError(f"log_base must be positive and != 1, got {log_base}")
    v = spectrum.values
    total = float(v.sum())
    if total <= 0.0:
        raise NumericError("all-zero spectrum: total power is zero, entropy undefined")
    p = v / total
    nz = p[p > 0]
    h = float(-(nz * np.log(nz)).sum())
    if log_base != math.e:
        h /= math.log(log_base)
    return h
