"""Signal ingestion (CSV, WAV PCM16) and deterministic CSV/JSON export.

Float formatting everywhere is the shortest round-trip decimal (Python's
repr), and CSV rows end with a bare newline, so identical inputs always
serialize to identical bytes. NaN markers become empty CSV fields and JSON
nulls.
"""
from __future__ import annotations

import json
import math
import wave
from pathlib import Path

import numpy as np

from .errors import SignalError
from .monitor import MonitorTrace
from .nulldist import NullDistributionSummary
from .spectrum import Signal
from .stats import GroupComparison

TRACE_COLUMNS = ("start_index", "cid", "cod", "entropy", "local_energy",
                 "combined_cid", "combined_cod")


def read_csv_signal(path: str | Path) -> Signal:
    """Load a signal from a one-sample-per-line file.

    A single-column CSV with an optional header also works: a non-numeric
    first line is treated as the header. Blank lines are ignored. Parse
    failures report the offending line number.
    """
    path = Path(path)
    samples: list[float] = []
    try:
        with open(path, newline="") as fh:
            for lineno, raw in enumerate(fh, start=1):
                text = raw.strip()
                if not text:
                    continue
                fields = [f for f in text.split(",") if f.strip()]
                if len(fields) != 1:
                    raise SignalError(f"{path}:{lineno}: expected a single column, got {len(fields)} fields")
                try:
                    value = float(fields[0])
                except ValueError:
                    if lineno == 1:
                        continue  # header line
                    raise SignalError(f"{path}:{lineno}: not a number: {fields[0]!r}") from None
                if not math.isfinite(value):
                    raise SignalError(f"{path}:{lineno}: non-finite sample: {fields[0]!r}")
                samples.append(value)
    except OSError as exc:
        raise SignalError(f"cannot read {path}: {exc}") from exc
    if not samples:
        raise SignalError(f"{path}: no samples found")
    return Signal(np.array(samples, dtype=np.float64))


def read_wav_signal(path: str | Path, channel: int = 0) -> Signal:
    """Load one channel of a 16-bit PCM WAV file as samples in [-1, 1).

    Integer sample values are divided by 32768. The sample rate is taken
    from the header. Anything other than 16-bit PCM is rejected.
    """
    path = Path(path)
    try:
        with wave.open(str(path), "rb") as wf:
            n_channels = wf.getnchannels()
            width = wf.getsampwidth()
            rate = wf.getframerate()
            if width != 2:
                raise SignalError(f"{path}: unsupported sample width {8 * width} bit; only 16-bit PCM is supported")
            if not 0 <= channel < n_channels:
                raise SignalError(f"{path}: channel {channel} out of range (file has {n_channels})")
            raw = wf.readframes(wf.getnframes())
    except (wave.Error, EOFError) as exc:
        raise SignalError(f"{path}: malformed or non-PCM WAV file: {exc}") from exc
    except OSError as exc:
        raise SignalError(f"cannot read {path}: {exc}") from exc
    data = np.frombuffer(raw, dtype="<i2")
    if data.size % n_channels != 0:
        raise SignalError(f"{path}: frame data is not a whole number of frames")
    frames = data.reshape(-1, n_channels)
    if frames.shape[0] == 0:
        raise SignalError(f"{path}: no audio frames")
    samples = frames[:, channel].astype(np.float64) / 32768.0
    return Signal(samples, sample_rate_hz=float(rate))


def format_float(x: float) -> str:
    """Shortest decimal that round-trips to the same float; '' for NaN."""
    if math.isnan(x):
        return ""
    return repr(float(x))


def _json_number(x: float):
    return None if not math.isfinite(x) else float(x)


def trace_to_csv(trace: MonitorTrace) -> str:
    lines = [",".join(TRACE_COLUMNS)]
    for i in range(len(trace)):
        row = [str(int(trace.frame_start_indices[i]))]
        row += [format_float(arr[i]) for arr in (trace.cid, trace.cod, trace.entropy,
                                                 trace.local_energy, trace.combined_cid,
                                                 trace.combined_cod)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trace_to_json(trace: MonitorTrace) -> str:
    obj = {
        "start_index": [int(v) for v in trace.frame_start_indices],
        "cid": [_json_number(v) for v in trace.cid],
        "cod": [_json_number(v) for v in trace.cod],
        "entropy": [_json_number(v) for v in trace.entropy],
        "local_energy": [_json_number(v) for v in trace.local_energy],
        "combined_cid": [_json_number(v) for v in trace.combined_cid],
        "combined_cod": [_json_number(v) for v in trace.combined_cod],
    }
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def summary_to_json(summary: NullDistributionSummary) -> str:
    obj = {
        "n": summary.n,
        "trials": summary.trials,
        "descriptor": summary.descriptor,
        "mode": summary.mode,
        "seed": summary.seed,
        "mean": _json_number(summary.mean),
        "std": _json_number(summary.std),
        "skewness": _json_number(summary.skewness),
        "excess_kurtosis": _json_number(summary.excess_kurtosis),
        "histogram": {
            "bin_edges": [float(e) for e in summary.bin_edges],
            "counts": [int(c) for c in summary.counts],
        },
    }
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def histogram_to_csv(summary: NullDistributionSummary) -> str:
    lines = ["bin_left,bin_right,count"]
    edges = summary.bin_edges
    for i, count in enumerate(summary.counts):
        lines.append(f"{format_float(edges[i])},{format_float(edges[i + 1])},{int(count)}")
    return "\n".join(lines) + "\n"


def comparisons_to_csv(comparisons: list[GroupComparison]) -> str:
    lines = ["metric,group_a,group_b,p_value,median_a,median_b"]
    for comp in comparisons:
        for i, a in enumerate(comp.labels):
            for j in range(i + 1, len(comp.labels)):
                b = comp.labels[j]
                lines.append(",".join([
                    comp.metric, a, b,
                    format_float(comp.p_values[i, j]),
                    format_float(comp.medians[a]),
                    format_float(comp.medians[b]),
                ]))
    return "\n".join(lines) + "\n"


def comparisons_to_json(comparisons: list[GroupComparison]) -> str:
    obj = {}
    for comp in comparisons:
        obj[comp.metric] = {
            "labels": comp.labels,
            "medians": {k: _json_number(v) for k, v in comp.medians.items()},
            "p_values": [[_json_number(p) for p in row] for row in comp.p_values],
        }
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def qq_to_csv(points: np.ndarray) -> str:
    lines = ["empirical_quantile,normal_quantile"]
    for emp, theo in points:
        lines.append(f"{format_float(emp)},{format_float(theo)}")
    return "\n".join(lines) + "\n"
