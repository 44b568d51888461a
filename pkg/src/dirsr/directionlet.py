"""Skewed anisotropic wavelet transform with anisotropy 2:1 on square patches.

One level splits a patch three times with the Daub4 bank: along the
transform direction d1, along the alignment direction d2, then along d1
again, producing eight named bands.  Band letters follow the split
outcomes: the first letter is A/V/H/D from the (d1, d2) low/high
combination, the suffix L/H is the final d1 split.

Oversampled mode keeps every coefficient in original grid coordinates
(filtering walks the toroidal co-lines of each direction).  Critical
mode halves along the stage direction each time; bands are stored in
the line-major layout of their last split, which keeps the transform
orthogonal and exactly invertible on the tiny patches used here.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .filterbank import daub4
from .image import Patch
from .lattice import DirectionPair, canonical_pairs

BAND_NAMES = ("AL", "AH", "HL", "HH", "VL", "VH", "DL", "DH")
DETAIL_NAMES = ("HL", "HH", "VL", "VH", "DL", "DH")


@dataclass(frozen=True)
class SubbandSet:
    bands: dict
    pair: DirectionPair
    mode: str
    n: int

    def __post_init__(self):
        if set(self.bands) != set(BAND_NAMES):
            raise ValueError(f"expected bands {BAND_NAMES}, got {tuple(self.bands)}")

    def detail_bands(self):
        """The six high-pass bands in the normative serialization order."""
        return [self.bands[name] for name in DETAIL_NAMES]

    def replace_details(self, details) -> "SubbandSet":
        bands = dict(self.bands)
        for name, grid in zip(DETAIL_NAMES, details):
            grid = np.asarray(grid, dtype=np.float64)
            if grid.shape != bands[name].shape:
                raise ValueError(
                    f"band {name}: shape {grid.shape} != {bands[name].shape}"
                )
            bands[name] = grid
        return SubbandSet(bands, self.pair, self.mode, self.n)


def _line_index_map(shape, vec):
    """Index arrays turning an (R, C) toroidal array into line-major layout.

    Lines generalize the square-grid co-lines to rectangular arrays: a
    diagonal cycle on an (R, C) torus has length lcm(R, C) and there are
    gcd(R, C) of them.
    """
    rows_n, cols_n = shape
    if vec == (1, 0):
        k = np.arange(rows_n)[:, None]
        i = np.arange(cols_n)[None, :]
        return np.broadcast_to(k, (rows_n, cols_n)), np.broadcast_to(i, (rows_n, cols_n))
    if vec == (0, 1):
        k = np.arange(cols_n)[:, None]
        i = np.arange(rows_n)[None, :]
        return np.broadcast_to(i, (cols_n, rows_n)), np.broadcast_to(k, (cols_n, rows_n))
    g = math.gcd(rows_n, cols_n)
    length = rows_n * cols_n // g
    k = np.arange(g)[:, None]
    i = np.arange(length)[None, :]
    if vec == (1, 1):
        return np.broadcast_to(i % rows_n, (g, length)), (k + i) % cols_n
    if vec == (1, -1):
        return np.broadcast_to(i % rows_n, (g, length)), (k - i) % cols_n
    raise ValueError(f"unsupported direction vector {vec}")


def _critical_split(x, vec):
    f = daub4()
    ri, ci = _line_index_map(x.shape, vec)
    lm = np.ascontiguousarray(x[ri, ci])
    if lm.shape[1] % 2:
        raise ValueError(f"cannot critically split odd line length {lm.shape[1]}")
    return kernels.rows_analyze(lm, f.low, f.high)


def _critical_merge(lo, hi, vec, parent_shape):
    f = daub4()
    lm = kernels.rows_synthesize(lo, hi, f.low, f.high)
    ri, ci = _line_index_map(parent_shape, vec)
    out = np.empty(parent_shape, dtype=np.float64)
    out[ri, ci] = lm
    return out


def _over_split(x, vec):
    f = daub4()
    return kernels.stage_apply(x, f.low, f.high, *_step(vec))


def _over_merge(lo, hi, vec):
    f = daub4()
    return kernels.stage_adjoint(lo, hi, f.low, f.high, *_step(vec))


def _step(vec):
    from .lattice import _STEPS

    return _STEPS[vec]


def _critical_shapes(n, pair):
    """Band shapes after each of the three critical splits."""
    shapes = [(n, n)]
    for vec in (pair.d1.vector, pair.d2.vector):
        ri, _ = _line_index_map(shapes[-1], vec)
        shapes.append((ri.shape[0], ri.shape[1] // 2))
    return shapes  # [patch shape, after stage 1, after stage 2]


def forward_awt21(p: Patch, pair: DirectionPair, mode: str = "oversampled") -> SubbandSet:
    """One decomposition level along (d1, d2, d1)."""
    if mode not in ("critical", "oversampled"):
        raise ValueError(f"unknown mode {mode!r}")
    x = p.values if isinstance(p, Patch) else np.asarray(p, dtype=np.float64)
    n = x.shape[0]
    if x.shape != (n, n):
        raise ValueError("patch must be square")
    v1, v2 = pair.d1.vector, pair.d2.vector
    split = _over_split if mode == "oversampled" else _critical_split
    lo1, hi1 = split(x, v1)
    band_a, band_v = split(lo1, v2)
    band_h, band_d = split(hi1, v2)
    bands = {}
    for letter, grid in (("A", band_a), ("H", band_h), ("V", band_v), ("D", band_d)):
        lo3, hi3 = split(grid, v1)
        bands[letter + "L"] = lo3
        bands[letter + "H"] = hi3
    return SubbandSet(bands, pair, mode, n)


def inverse_awt21(s: SubbandSet) -> Patch:
    """Exact inverse of forward_awt21 (stages undone in reverse order)."""
    v1, v2 = s.pair.d1.vector, s.pair.d2.vector
    if s.mode == "oversampled":
        for name, grid in s.bands.items():
            if grid.shape != (s.n, s.n):
                raise ValueError(f"band {name} has shape {grid.shape}, expected square")
        merge3 = lambda lo, hi: _over_merge(lo, hi, v1)
        merge2 = lambda lo, hi: _over_merge(lo, hi, v2)
        merge1 = lambda lo, hi: _over_merge(lo, hi, v1)
    else:
        shapes = _critical_shapes(s.n, s.pair)
        merge3 = lambda lo, hi: _critical_merge(lo, hi, v1, shapes[2])
        merge2 = lambda lo, hi: _critical_merge(lo, hi, v2, shapes[1])
        merge1 = lambda lo, hi: _critical_merge(lo, hi, v1, shapes[0])
    quads = {
        letter: merge3(s.bands[letter + "L"], s.bands[letter + "H"])
        for letter in "AHVD"
    }
    lo1 = merge2(quads["A"], quads["V"])
    hi1 = merge2(quads["H"], quads["D"])
    return Patch(merge1(lo1, hi1))


def detail_energy(s: SubbandSet) -> float:
    """Sum of squared coefficients over the six detail bands."""
    return float(sum(np.square(b).sum() for b in s.detail_bands()))


def best_direction(p: Patch):
    """Pick the canonical pair minimizing oversampled detail energy.

    Ties break toward the earlier pair in canonical order.  Returns the
    pair and all five energies for diagnostics.
    """
    energies = []
    for pair in canonical_pairs():
        energies.append(detail_energy(forward_awt21(p, pair, "oversampled")))
    best = min(range(len(energies)), key=lambda i: (energies[i], i))
    return canonical_pairs()[best], energies
