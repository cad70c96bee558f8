"""Command-line front end.

Four subcommands:

* ``analyze``   one signal file -> descriptor set (JSON or CSV)
* ``monitor``   one signal file -> sliding-window trace (CSV or JSON)
* ``nulldist``  -> null-distribution summary JSON (+ histogram CSV with --output)
* ``compare``   directory of group subdirectories -> pairwise p-value tables

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.
The library rejects odd-length signals; this layer is lenient and truncates
the trailing sample with a warning on stderr instead.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import sigio
from .descriptors import DescriptorSet, analyze, distance_matrix, distance_matrix_eigenvalues
from .errors import NumericError, SignalError
from .monitor import MonitorConfig, sliding_descriptors
from .nulldist import sample_null
from .ranking import RankDirection, rank_spectrum
from .spectrum import Signal, power_spectrum
from .stats import group_compare

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

SIGNAL_SUFFIXES = (".csv", ".txt", ".wav")


class UsageError(Exception):
    """Invalid flag combination or input layout, detected after parsing."""


@dataclass
class RunConfig:
    """Validated options for one CLI invocation."""

    command: str
    inputs: list[Path] = field(default_factory=list)
    output: Path | None = None
    window: int = 1024
    step: int = 128
    q: float = 1.0
    le_window: int | None = None
    seed: int = 0
    trials: int = 640_000
    n: int = 64
    descriptor: str = "cid"
    channel: int = 0
    rank_direction: RankDirection = RankDirection.DESCENDING
    log_base: float = math.e
    fmt: str = "json"
    workers: int = 1
    remove_mean: bool = False
    eigenvalues: bool = False


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"must satisfy 0 < q <= 1, got {value}")
    return value


def _log_base(text: str) -> float:
    value = math.e if text == "e" else float(text)
    if value <= 0 or value == 1.0:
        raise argparse.ArgumentTypeError(f"log base must be positive and != 1, got {text}")
    return value


def _add_common_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=_fraction, default=1.0,
                   help="energy fraction for rank truncation, in (0, 1] (default 1.0)")
    p.add_argument("--rank-direction", choices=["desc", "asc"], default="desc",
                   help="whether rank 1 is the largest (desc) or smallest (asc) bin")
    p.add_argument("--log-base", type=_log_base, default="e", metavar="BASE",
                   help="entropy log base: 'e' (default), 2, 10, ...")
    p.add_argument("--remove-mean", action="store_true",
                   help="subtract the signal mean before analysis")
    p.add_argument("--channel", type=_nonnegative_int, default=0,
                   help="channel to read from multi-channel WAV input (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specrank",
                     description="Rank-order structure of power spectra: ordinal "
                                 "irregularity descriptors, their null distributions, "
                                 "sliding-window monitoring, and group comparison.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="descriptor set of one signal file")
    p.add_argument("input", type=Path, help="signal file (.csv one sample per line, or .wav PCM16)")
    _add_common_analysis_flags(p)
    p.add_argument("--eigenvalues", action="store_true",
                   help="include rank-distance-matrix eigenvalues (JSON output only)")
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    p.add_argument("--output", type=Path, default=None, help="output file (default stdout)")

    p = sub.add_parser("monitor", help="sliding-window descriptor trace of one signal file")
    p.add_argument("input", type=Path)
    p.add_argument("--window", type=_positive_int, default=1024, help="frame length in samples (even, >= 4)")
    p.add_argument("--step", type=_positive_int, default=128, help="hop between frame starts")
    p.add_argument("--le-window", type=_positive_int, default=None,
                   help="trailing samples for local energy (default: window)")
    _add_common_analysis_flags(p)
    p.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    p.add_argument("--output", type=Path, default=None)

    p = sub.add_parser("nulldist", help="Monte Carlo null distribution of a descriptor")
    p.add_argument("--n", type=_positive_int, default=64, help="permutation size (default 64)")
    p.add_argument("--trials", type=_positive_int, default=640_000)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--descriptor", choices=["cid", "cod"], default="cid")
    p.add_argument("--workers", type=_positive_int, default=1,
                   help="worker threads; the output does not depend on this")
    p.add_argument("--output", type=Path, default=None,
                   help="summary JSON path; histogram CSV lands next to it as <name>.hist.csv")

    p = sub.add_parser("compare", help="pairwise rank-sum p-values between groups of signal files")
    p.add_argument("input", type=Path,
                   help="directory with one subdirectory per group, each holding signal files")
    _add_common_analysis_flags(p)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    p.add_argument("--output", type=Path, default=None)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if getattr(args, "input", None) is not None:
        cfg.inputs = [args.input]
    for name in ("output", "window", "step", "q", "seed", "trials", "n",
                 "descriptor", "channel", "fmt", "workers", "remove_mean", "eigenvalues"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "le_window"):
        cfg.le_window = args.le_window
    if hasattr(args, "rank_direction"):
        cfg.rank_direction = RankDirection(args.rank_direction)
    if hasattr(args, "log_base"):
        cfg.log_base = args.log_base
    if cfg.command == "analyze" and cfg.eigenvalues and cfg.fmt != "json":
        raise UsageError("--eigenvalues is only available with --format json")
    return cfg


def _load_signal(path: Path, cfg: RunConfig) -> Signal:
    if path.suffix.lower() == ".wav":
        signal = sigio.read_wav_signal(path, cfg.channel)
    else:
        signal = sigio.read_csv_signal(path)
    samples = signal.samples
    if samples.size % 2 != 0:
        print(f"warning: {path}: odd length {samples.size}, truncating the final sample",
              file=sys.stderr)
        samples = samples[:-1]
    if cfg.remove_mean:
        samples = samples - samples.mean()
    if samples is not signal.samples:
        signal = Signal(samples, signal.sample_rate_hz)
    return signal


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _descriptor_json(d: DescriptorSet, eigen: tuple[np.ndarray, np.ndarray] | None) -> str:
    obj = {
        "cid": d.cid,
        "cod": d.cod,
        "entropy": d.spectral_entropy,
        "L_used": d.L_used,
        "q_used": d.q_used,
    }
    if eigen is not None:
        values, partial = eigen
        obj["eigenvalues"] = [float(v) for v in values]
        obj["eigenvalue_partial_sums"] = [float(v) for v in partial]
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _descriptor_csv(d: DescriptorSet) -> str:
    header = "cid,cod,entropy,L_used,q_used"
    row = ",".join([sigio.format_float(d.cid), sigio.format_float(d.cod),
                    sigio.format_float(d.spectral_entropy), str(d.L_used),
                    sigio.format_float(d.q_used)])
    return f"{header}\n{row}\n"


def _run_analyze(cfg: RunConfig) -> int:
    signal = _load_signal(cfg.inputs[0], cfg)
    d = analyze(signal, cfg.q, direction=cfg.rank_direction, log_base=cfg.log_base)
    if cfg.fmt == "json":
        eigen = None
        if cfg.eigenvalues:
            perm = rank_spectrum(power_spectrum(signal), cfg.rank_direction)
            eigen = distance_matrix_eigenvalues(distance_matrix(perm))
        _emit(_descriptor_json(d, eigen), cfg.output)
    else:
        _emit(_descriptor_csv(d), cfg.output)
    return EXIT_OK


def _run_monitor(cfg: RunConfig) -> int:
    signal = _load_signal(cfg.inputs[0], cfg)
    mon_cfg = MonitorConfig(window=cfg.window, step=cfg.step, q=cfg.q, le_window=cfg.le_window)
    trace = sliding_descriptors(signal, mon_cfg, direction=cfg.rank_direction, log_base=cfg.log_base)
    text = sigio.trace_to_csv(trace) if cfg.fmt == "csv" else sigio.trace_to_json(trace)
    _emit(text, cfg.output)
    return EXIT_OK


def _run_nulldist(cfg: RunConfig) -> int:
    summary = sample_null(cfg.n, cfg.trials, cfg.seed, cfg.descriptor,
                          workers=cfg.workers, keep_values=False)
    _emit(sigio.summary_to_json(summary), cfg.output)
    if cfg.output is not None:
        hist_path = cfg.output.with_suffix(cfg.output.suffix + ".hist.csv")
        hist_path.write_text(sigio.histogram_to_csv(summary))
    return EXIT_OK


def _run_compare(cfg: RunConfig) -> int:
    root = cfg.inputs[0]
    if not root.is_dir():
        raise SignalError(f"{root}: not a directory")
    group_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if len(group_dirs) < 2:
        raise UsageError(f"compare needs at least 2 group subdirectories under {root}, "
                         f"found {len(group_dirs)}")

    def file_descriptors(gdir: Path) -> list[DescriptorSet]:
        files = sorted(p for p in gdir.iterdir()
                       if p.is_file() and p.suffix.lower() in SIGNAL_SUFFIXES)
        if len(files) < 2:
            raise UsageError(f"group {gdir.name!r} needs at least 2 signal files, found {len(files)}")

        def one(path: Path) -> DescriptorSet:
            try:
                return analyze(_load_signal(path, cfg), cfg.q,
                               direction=cfg.rank_direction, log_base=cfg.log_base)
            except (SignalError, NumericError) as exc:
                raise type(exc)(f"{path}: {exc}") from exc

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                return list(pool.map(one, files))
        return [one(path) for path in files]

    groups = {gdir.name: file_descriptors(gdir) for gdir in group_dirs}
    comparisons = [group_compare(groups, metric) for metric in ("cid", "cod", "entropy")]
    text = (sigio.comparisons_to_csv(comparisons) if cfg.fmt == "csv"
            else sigio.comparisons_to_json(comparisons))
    _emit(text, cfg.output)
    return EXIT_OK


_RUNNERS = {
    "analyze": _run_analyze,
    "monitor": _run_monitor,
    "nulldist": _run_nulldist,
    "compare": _run_compare,
}


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    try:
        return _RUNNERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"specrank: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SignalError, ValueError) as exc:
        print(f"specrank: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"specrank: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"specrank: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"specrank: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


def console_main() -> None:
    sys.exit(main())
