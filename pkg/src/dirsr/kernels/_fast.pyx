# cython: language_level=3
"""Compiled hot kernels: filter-bank stages and the MAD linear scan.

Mirrors dirsr.kernels._ref, including tap accumulation order, so both
backends give identical floating-point output.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t wrap(Py_ssize_t i, Py_ssize_t n) nogil:
    i %= n
    if i < 0:
        i += n
    return i


def stage_apply(x, low_taps, high_taps, long sr, long sc):
    cdef cnp.ndarray[double, ndim=2] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h = np.ascontiguousarray(low_taps, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] g = np.ascontiguousarray(high_taps, dtype=np.float64)
    cdef Py_ssize_t rows = xa.shape[0], cols = xa.shape[1], ntaps = h.shape[0]
    cdef cnp.ndarray[double, ndim=2] lo = np.empty((rows, cols), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] hi = np.empty((rows, cols), dtype=np.float64)
    cdef Py_ssize_t r, c, t, rr, cc
    cdef double v, al, ah
    for r in range(rows):
        for c in range(cols):
            al = 0.0
            ah = 0.0
            for t in range(ntaps):
                rr = wrap(r + t * sr, rows)
                cc = wrap(c + t * sc, cols)
                v = xa[rr, cc]
                al = al + h[t] * v
                ah = ah + g[t] * v
            lo[r, c] = al
            hi[r, c] = ah
    return lo, hi


def stage_adjoint(lo, hi, low_taps, high_taps, long sr, long sc):
    cdef cnp.ndarray[double, ndim=2] la = np.ascontiguousarray(lo, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] ha = np.ascontiguousarray(hi, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h = np.ascontiguousarray(low_taps, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] g = np.ascontiguousarray(high_taps, dtype=np.float64)
    cdef Py_ssize_t rows = la.shape[0], cols = la.shape[1], ntaps = h.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((rows, cols), dtype=np.float64)
    cdef Py_ssize_t r, c, t, rr, cc
    cdef double acc
    for r in range(rows):
        for c in range(cols):
            acc = 0.0
            for t in range(ntaps):
                rr = wrap(r - t * sr, rows)
                cc = wrap(c - t * sc, cols)
                acc = acc + h[t] * la[rr, cc]
                acc = acc + g[t] * ha[rr, cc]
            out[r, c] = acc * 0.5
    return out


def rows_analyze(lm, low_taps, high_taps):
    cdef cnp.ndarray[double, ndim=2] xa = np.ascontiguousarray(lm, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h = np.ascontiguousarray(low_taps, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] g = np.ascontiguousarray(high_taps, dtype=np.float64)
    cdef Py_ssize_t rows = xa.shape[0], cols = xa.shape[1], ntaps = h.shape[0]
    cdef Py_ssize_t half = cols // 2
    cdef cnp.ndarray[double, ndim=2] lo = np.empty((rows, half), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] hi = np.empty((rows, half), dtype=np.float64)
    cdef Py_ssize_t r, j, t, cc
    cdef double v, al, ah
    for r in range(rows):
        for j in range(half):
            al = 0.0
            ah = 0.0
            for t in range(ntaps):
                cc = wrap(2 * j + t, cols)
                v = xa[r, cc]
                al = al + h[t] * v
                ah = ah + g[t] * v
            lo[r, j] = al
            hi[r, j] = ah
    return lo, hi


def rows_synthesize(lo, hi, low_taps, high_taps):
    cdef cnp.ndarray[double, ndim=2] la = np.ascontiguousarray(lo, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] ha = np.ascontiguousarray(hi, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h = np.ascontiguousarray(low_taps, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] g = np.ascontiguousarray(high_taps, dtype=np.float64)
    cdef Py_ssize_t rows = la.shape[0], half = la.shape[1], ntaps = h.shape[0]
    cdef Py_ssize_t cols = 2 * half
    cdef cnp.ndarray[double, ndim=2] out = np.zeros((rows, cols), dtype=np.float64)
    cdef Py_ssize_t r, j, t, cc
    for t in range(ntaps):
        for r in range(rows):
            for j in range(half):
                cc = wrap(2 * j + t, cols)
                out[r, cc] = out[r, cc] + (h[t] * la[r, j] + g[t] * ha[r, j])
    return out


def mad_scan(stack, probe):
    cdef cnp.ndarray[double, ndim=2] sa = np.ascontiguousarray(stack, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] pa = np.ascontiguousarray(probe, dtype=np.float64)
    cdef Py_ssize_t m = sa.shape[0], k = sa.shape[1]
    cdef Py_ssize_t i, j, best = 0
    cdef double d, diff, best_d
    best_d = np.inf
    for i in range(m):
        d = 0.0
        for j in range(k):
            diff = sa[i, j] - pa[j]
            if diff < 0.0:
                diff = -diff
            d += diff
        if d < best_d:
            best_d = d
            best = i
    return int(best), float(best_d)
