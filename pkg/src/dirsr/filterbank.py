"""Orthogonal Daub4 two-channel filter bank on periodic 1-D signals.

Supports the critically sampled split (keep even-indexed outputs) and
the undecimated ("oversampled") split that keeps every output.  All
boundary handling is circular, which makes perfect reconstruction exact
even on very short signals.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels


@dataclass(frozen=True)
class FilterPair:
    low: np.ndarray
    high: np.ndarray
    id: str

    def __post_init__(self):
        lo = np.ascontiguousarray(self.low, dtype=np.float64)
        hi = np.ascontiguousarray(self.high, dtype=np.float64)
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "low", lo)
        object.__setattr__(self, "high", hi)


@dataclass(frozen=True)
class BandPair1D:
    low: np.ndarray
    high: np.ndarray
    mode: str
    n: int


@lru_cache(maxsize=None)
def daub4() -> FilterPair:
    """The 4-tap Daubechies analysis pair.

    high[k] = (-1)^k * low[3-k], so the high-pass kills constants and
    the pair is orthonormal.
    """
    s3 = math.sqrt(3.0)
    low = np.array([1.0 + s3, 3.0 + s3, 3.0 - s3, 1.0 - s3]) / (4.0 * math.sqrt(2.0))
    high = np.array([low[3 - k] * (-1) ** k for k in range(4)])
    return FilterPair(low, high, "daub4")


def _check_mode(mode: str):
    if mode not in ("critical", "oversampled"):
        raise ValueError(f"mode must be 'critical' or 'oversampled', got {mode!r}")


def analyze_1d(x, f: FilterPair, mode: str = "critical") -> BandPair1D:
    """One-level periodic split of a 1-D signal.

    The full (undecimated) outputs are a[i] = sum_k f[k] x[(i+k) mod n];
    critical mode keeps the even-indexed half of each channel.
    """
    _check_mode(mode)
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n == 0:
        raise ValueError("cannot analyze an empty signal")
    if mode == "critical":
        if n % 2:
            raise ValueError(f"critical mode needs even length, got {n}")
        lo, hi = kernels.rows_analyze(x.reshape(1, n), f.low, f.high)
    else:
        lo, hi = kernels.stage_apply(x.reshape(1, n), f.low, f.high, 0, 1)
    return BandPair1D(lo[0], hi[0], mode, n)


def synthesize_1d(b: BandPair1D, f: FilterPair) -> np.ndarray:
    """Invert analyze_1d exactly.

    Critical mode uses the orthogonal adjoint; oversampled mode averages
    the two polyphase inverses (equivalently, half the adjoint), which
    is exact for the two-phase undecimated transform.
    """
    _check_mode(b.mode)
    expected = b.n // 2 if b.mode == "critical" else b.n
    if b.low.size != expected or b.high.size != expected:
        raise ValueError(
            f"band lengths ({b.low.size}, {b.high.size}) inconsistent with "
            f"mode {b.mode!r} and n={b.n}"
        )
    if b.mode == "critical":
        out = kernels.rows_synthesize(
            b.low.reshape(1, -1), b.high.reshape(1, -1), f.low, f.high
        )
    else:
        out = kernels.stage_adjoint(
            b.low.reshape(1, -1), b.high.reshape(1, -1), f.low, f.high, 0, 1
        )
    return out[0]
