"""Pure-numpy reference kernels.

These are the fallback implementations used when the compiled extension
(`dirsr.kernels._fast`) is unavailable.  Accumulation order matches the
compiled loops (left to right over filter taps) so both backends produce
identical floating-point results on the same inputs.
"""

import numpy as np


def stage_apply(x, low_taps, high_taps, sr, sc):
    """Undecimated filtering of every traversal line of ``x``.

    A line steps by (sr, sc) per position with periodic wrap, so
    out[r, c] = sum_t taps[t] * x[(r + t*sr) % R, (c + t*sc) % C].
    Returns the (low, high) output grids, same shape as ``x``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    lo = low_taps[0] * x
    hi = high_taps[0] * x
    for t in range(1, len(low_taps)):
        shifted = np.roll(x, (-t * sr, -t * sc), axis=(0, 1))
        lo = lo + low_taps[t] * shifted
        hi = hi + high_taps[t] * shifted
    return lo, hi


def stage_adjoint(lo, hi, low_taps, high_taps, sr, sc):
    """Inverse of one undecimated stage: half the adjoint.

    The two-phase undecimated analysis operator W satisfies W^T W = 2 I
    for an orthogonal tap pair, so x = W^T y / 2 exactly.
    """
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    out = low_taps[0] * lo
    out = out + high_taps[0] * hi
    for t in range(1, len(low_taps)):
        out = out + low_taps[t] * np.roll(lo, (t * sr, t * sc), axis=(0, 1))
        out = out + high_taps[t] * np.roll(hi, (t * sr, t * sc), axis=(0, 1))
    return out * 0.5


def rows_analyze(lm, low_taps, high_taps):
    """Critically sampled split of each row of a line-major array.

    Rows have even length L; outputs have L/2 columns:
    low[k, j] = sum_t taps[t] * lm[k, (2j + t) % L].
    """
    lm = np.ascontiguousarray(lm, dtype=np.float64)
    n_cols = lm.shape[1]
    base = 2 * np.arange(n_cols // 2)
    lo = low_taps[0] * lm[:, base % n_cols]
    hi = high_taps[0] * lm[:, base % n_cols]
    for t in range(1, len(low_taps)):
        cols = (base + t) % n_cols
        lo = lo + low_taps[t] * lm[:, cols]
        hi = hi + high_taps[t] * lm[:, cols]
    return lo, hi


def rows_synthesize(lo, hi, low_taps, high_taps):
    """Exact inverse of rows_analyze (adjoint of the orthogonal split)."""
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    half = lo.shape[1]
    n_cols = 2 * half
    out = np.zeros((lo.shape[0], n_cols), dtype=np.float64)
    base = 2 * np.arange(half)
    for t in range(len(low_taps)):
        cols = (base + t) % n_cols
        # fixed t -> distinct target columns, so fancy += is safe
        out[:, cols] += low_taps[t] * lo + high_taps[t] * hi
    return out


def mad_scan(stack, probe):
    """Linear L1 scan: index and distance of the closest row of ``stack``.

    Ties break toward the lowest index.
    """
    dist = np.abs(stack - probe).sum(axis=1)
    i = int(np.argmin(dist))
    return i, float(dist[i])
