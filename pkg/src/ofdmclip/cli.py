"""Experiment runner: CCDF curves, SER sweeps, and window comparisons as CSV.

Every flag default can be overridden by an environment variable with the
``OFDMCLIP_`` prefix (``--cr-db`` -> ``OFDMCLIP_CR_DB`` and so on); explicit
flags beat the environment.  Output is written atomically — a failed run
never leaves a partial CSV behind.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numeric error.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from .crest import ClipConfig, STRATEGIES
from .metrics import ccdf_point_db, default_threshold_grid, estimate_ccdf
from .modulation import SUPPORTED_ORDERS
from .simulate import papr_samples, ser_errors
from .transform import OfdmConfig
from .windows import WINDOW_NAMES, WindowKind

ENV_PREFIX = "OFDMCLIP_"

SWEEP_WINDOWS = ("kaiser", "blackman", "hann", "hamming", "flattop")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


class _EnvOverrideError(Exception):
    pass


def _env(flag: str, cast, fallback):
    name = ENV_PREFIX + flag.replace("-", "_").upper()
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError as exc:
        raise _EnvOverrideError(f"invalid {name}={raw!r}: {exc}")


def _add_common(p: argparse.ArgumentParser, default_out: str, with_window: bool = True):
    p.add_argument("--n", type=int, default=_env("n", int, 64),
                   help="subcarrier count (power of two)")
    p.add_argument("--mod", type=int, choices=SUPPORTED_ORDERS,
                   default=_env("mod", int, 8), help="constellation order")
    p.add_argument("--oversample", type=int, choices=(1, 2, 4, 8),
                   default=_env("oversample", int, 4), help="time-domain oversampling factor")
    p.add_argument("--cr-db", type=float, default=_env("cr-db", float, 3.0),
                   help="clipping ratio over RMS in dB")
    p.add_argument("--iterations", type=int, default=_env("iterations", int, 5),
                   help="clip-and-filter iteration count (0 = no crest reduction)")
    p.add_argument("--clip", choices=STRATEGIES, default=_env("clip", str, "cf"),
                   help="crest-reduction strategy: none=hard clip, cf=clip+filter, pw=peak window")
    if with_window:
        p.add_argument("--window", choices=WINDOW_NAMES, default=_env("window", str, "hann"),
                       help="window used by the pw strategy")
    p.add_argument("--kaiser-beta", type=float, default=_env("kaiser-beta", float, 5.0),
                   help="kaiser window shape parameter")
    p.add_argument("--window-len", type=int, default=_env("window-len", int, 11),
                   help="peak-window length in samples (odd)")
    p.add_argument("--symbols", type=int, default=_env("symbols", int, 10000),
                   help="number of OFDM symbols to simulate")
    p.add_argument("--seed", type=int, default=_env("seed", int, 1),
                   help="master RNG seed (64-bit unsigned)")
    p.add_argument("--workers", type=int, default=_env("workers", int, 1),
                   help="parallel worker processes (does not affect results)")
    p.add_argument("--out", default=_env("out", str, default_out), help="output CSV path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdmclip",
        description="OFDM PAPR-reduction experiments (CCDF, SER, window sweep)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ccdf", help="PAPR CCDF of random OFDM symbols")
    _add_common(p, "ccdf.csv")

    p = sub.add_parser("ser", help="symbol error rate over an SNR grid")
    _add_common(p, "ser.csv")
    p.add_argument("--snr-start", type=float, default=_env("snr-start", float, 0.0))
    p.add_argument("--snr-stop", type=float, default=_env("snr-stop", float, 14.0))
    p.add_argument("--snr-step", type=float, default=_env("snr-step", float, 2.0))

    p = sub.add_parser("window-sweep",
                       help="peak-window PAPR comparison across the five named windows")
    _add_common(p, "window_sweep.csv", with_window=False)
    return parser


def _configs(args, parser, strategy=None, window_name=None):
    try:
        ofdm = OfdmConfig(args.n, args.oversample, args.mod)
        kind = WindowKind(window_name or getattr(args, "window", "hann"), args.kaiser_beta)
        clip_cfg = ClipConfig(args.cr_db, args.iterations, strategy or args.clip,
                              kind, args.window_len)
        if args.symbols < 1:
            raise ValueError(f"--symbols must be >= 1, got {args.symbols}")
        if not 0 <= args.seed < 2 ** 64:
            raise ValueError(f"--seed must be a 64-bit unsigned integer, got {args.seed}")
        if args.workers < 1:
            raise ValueError(f"--workers must be >= 1, got {args.workers}")
    except ValueError as exc:
        parser.error(str(exc))
    return ofdm, clip_cfg


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _run_ccdf(args, parser) -> None:
    ofdm, clip_cfg = _configs(args, parser)
    samples = papr_samples(ofdm, clip_cfg, args.symbols, args.seed, args.workers)
    curve = estimate_ccdf(samples, default_threshold_grid())
    lines = ["threshold_db,ccdf"]
    lines += [f"{t:g},{p:.6e}" for t, p in zip(curve.thresholds_db, curve.exceed_prob)]
    _write_atomic(args.out, "\n".join(lines) + "\n")
    print(f"mean_papr_db={samples.mean():.6f} ccdf3_papr_db={ccdf_point_db(samples):.6f}")
    print(f"wrote {args.out} ({curve.n_samples} symbols)")


def _snr_grid(args, parser) -> np.ndarray:
    if args.snr_step <= 0:
        parser.error(f"--snr-step must be positive, got {args.snr_step}")
    n_steps = int(np.floor((args.snr_stop - args.snr_start) / args.snr_step + 1e-9)) + 1
    if n_steps < 1:
        parser.error(f"empty SNR grid: start {args.snr_start} > stop {args.snr_stop}")
    return args.snr_start + args.snr_step * np.arange(n_steps)


def _run_ser(args, parser) -> None:
    grid = _snr_grid(args, parser)
    ofdm, clip_cfg = _configs(args, parser)
    lines = ["snr_db,symbols,errors,ser"]
    for snr in grid:
        errors = ser_errors(ofdm, clip_cfg, snr, args.symbols, args.seed, args.workers)
        sent = args.symbols * ofdm.n_subcarriers
        lines.append(f"{snr:g},{sent},{errors},{errors / sent:.6e}")
    _write_atomic(args.out, "\n".join(lines) + "\n")
    print(f"wrote {args.out} ({grid.size} SNR points)")


def _run_window_sweep(args, parser) -> None:
    lines = ["window,mean_papr_db,ccdf3_papr_db"]
    for name in SWEEP_WINDOWS:
        ofdm, clip_cfg = _configs(args, parser, strategy="pw", window_name=name)
        samples = papr_samples(ofdm, clip_cfg, args.symbols, args.seed, args.workers)
        lines.append(f"{name},{samples.mean():.6f},{ccdf_point_db(samples):.6f}")
    ofdm, _ = _configs(args, parser, strategy="pw")
    baseline = papr_samples(ofdm, None, args.symbols, args.seed, args.workers)
    print(f"unclipped mean_papr_db={baseline.mean():.6f} "
          f"ccdf3_papr_db={ccdf_point_db(baseline):.6f}")
    _write_atomic(args.out, "\n".join(lines) + "\n")
    print(f"wrote {args.out}")


_COMMANDS = {"ccdf": _run_ccdf, "ser": _run_ser, "window-sweep": _run_window_sweep}


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except _EnvOverrideError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args, parser)
    except OSError as exc:
        print(f"I/O error writing {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
