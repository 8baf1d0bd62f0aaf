#!/usr/bin/env python3
"""Benchmark the numba kernel lane against the pure-numpy fallback.

Runs both implementations of each hot kernel on identical inputs and
prints per-kernel timings plus an end-to-end peak-windowing pipeline.
The package itself picks its lane at import time (OFDMCLIP_NO_NUMBA=1
forces numpy); this script loads both lanes side by side.
"""
import argparse
import time

import numpy as np

from ofdmclip import _kernels, constellation
from ofdmclip.crest import ClipConfig
from ofdmclip.simulate import papr_samples
from ofdmclip.transform import OfdmConfig
from ofdmclip.windows import window


def timeit(fn, *args, repeats=5):
    fn(*args)  # warm (JIT compile / cache touch)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def fmt_row(name, t_np, t_nb):
    if t_nb is None:
        return f"{name:<18} {t_np * 1e3:>10.2f} ms {'-':>12} {'-':>8}"
    return (f"{name:<18} {t_np * 1e3:>10.2f} ms {t_nb * 1e3:>9.2f} ms "
            f"{t_np / t_nb:>7.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=4000, help="symbols per batch")
    ap.add_argument("--samples", type=int, default=256, help="samples per symbol")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(1)
    x = (rng.standard_normal((args.rows, args.samples))
         + 1j * rng.standard_normal((args.rows, args.samples)))
    mag = np.abs(x)
    thresh = np.full(args.rows, 1.3)
    w = window("hann", 11)
    points = x.ravel()[:200_000]
    const = constellation(64).points

    have_numba = _kernels._peak_suppress_nb is not None
    print(f"active backend: {_kernels.BACKEND}   "
          f"batch: {args.rows} x {args.samples} complex samples")
    print(f"{'kernel':<18} {'numpy':>13} {'numba':>12} {'speedup':>8}")

    cases = [
        ("peak_suppress", _kernels._peak_suppress_np, _kernels._peak_suppress_nb,
         (x, mag, thresh, w)),
        ("nearest_labels", _kernels._nearest_labels_np, _kernels._nearest_labels_nb,
         (points, const)),
        ("papr_db_rows", _kernels._papr_db_rows_np, _kernels._papr_db_rows_nb,
         (x,)),
    ]
    for name, fn_np, fn_nb, call_args in cases:
        t_np = timeit(fn_np, *call_args, repeats=args.repeats)
        t_nb = timeit(fn_nb, *call_args, repeats=args.repeats) if have_numba else None
        print(fmt_row(name, t_np, t_nb))

    # end-to-end: peak-windowing PAPR run through the active lane
    ofdm = OfdmConfig(64, 4, 8)
    cfg = ClipConfig(iterations=5, strategy="pw")
    t0 = time.perf_counter()
    papr_samples(ofdm, cfg, 2000, seed=1)
    print(f"\npipeline (2000 symbols, pw x5, {_kernels.BACKEND} lane): "
          f"{time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
