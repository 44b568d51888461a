"""Compare the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from dirsr.filterbank import daub4
from dirsr.kernels import _ref

try:
    from dirsr.kernels import _fast
except ImportError:
    _fast = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    f = daub4()
    patches = rng.standard_normal((2000, 8, 8))
    lo = rng.standard_normal((2000, 8, 8))
    mat = rng.standard_normal((5000, 96))
    probes = rng.standard_normal((200, 96))

    cases = [
        (
            "stage_apply (2000 8x8 patches, diagonal step)",
            lambda impl: [impl.stage_apply(p, f.low, f.high, 1, 1) for p in patches],
        ),
        (
            "stage_adjoint (2000 8x8 band pairs)",
            lambda impl: [
                impl.stage_adjoint(a, b, f.low, f.high, 1, -1)
                for a, b in zip(patches, lo)
            ],
        ),
        (
            "rows_analyze (2000 8x8 patches)",
            lambda impl: [impl.rows_analyze(p, f.low, f.high) for p in patches],
        ),
        (
            "mad_scan (200 probes x 5000 records)",
            lambda impl: [impl.mad_scan(mat, p) for p in probes],
        ),
    ]

    print(f"{'kernel':45s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, run in cases:
        t_ref = _time(lambda: run(_ref), args.repeat)
        if _fast is None:
            print(f"{name:45s} {t_ref * 1e3:9.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_fast = _time(lambda: run(_fast), args.repeat)
        print(
            f"{name:45s} {t_ref * 1e3:9.1f}ms {t_fast * 1e3:9.1f}ms "
            f"{t_ref / t_fast:7.1f}x"
        )
    if _fast is None:
        print("\ncompiled backend not importable; showing fallback timings only")


if __name__ == "__main__":
    main()
