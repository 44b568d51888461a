"""Forward observation model: block-average decimation and additive noise.

A low-resolution pixel is the mean of a q-by-q block of high-resolution
pixels; the same map is exposed as an explicit sparse matrix for oracle
testing against the pipeline implementation.
"""

from dataclasses import dataclass

import numpy as np

from .image import Image


@dataclass(frozen=True)
class DecimationMatrix:
    """Sparse block-average matrix: M^2 rows over (qM)^2 columns.

    Each row holds the q^2 column indices of one HR block, all with
    weight 1/q^2.
    """

    q: int
    lr_side: int
    row_columns: tuple  # row i -> tuple of q^2 HR lexicographic indices

    @property
    def shape(self):
        n = self.lr_side
        return (n * n, (self.q * n) ** 2)

    @property
    def weight(self) -> float:
        return 1.0 / (self.q * self.q)

    def apply(self, hr_lex: np.ndarray) -> np.ndarray:
        """Multiply by a lexicographically ordered HR vector.

        Each row sums its block entries first and scales once by 1/q^2,
        using the same pairwise summation tree as decimate() so the two
        paths agree bit for bit.
        """
        hr_lex = np.asarray(hr_lex, dtype=np.float64)
        out = np.empty(self.shape[0], dtype=np.float64)
        for i, cols in enumerate(self.row_columns):
            block = hr_lex[list(cols)].reshape(self.q, self.q)
            out[i] = _block_sum(block, self.q)[0, 0] * self.weight
        return out

    def dense(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=np.float64)
        for i, cols in enumerate(self.row_columns):
            m[i, list(cols)] = self.weight
        return m


def decimation_matrix(lr_side: int, q: int) -> DecimationMatrix:
    """Explicit decimation matrix for an lr_side x lr_side output."""
    if lr_side < 1 or q < 1:
        raise ValueError("lr_side and q must be >= 1")
    hr_side = q * lr_side
    rows = []
    for i in range(lr_side):
        for j in range(lr_side):
            rows.append(
                tuple(
                    (q * i + a) * hr_side + (q * j + b)
                    for a in range(q)
                    for b in range(q)
                )
            )
    return DecimationMatrix(q, lr_side, tuple(rows))


def _block_sum(a: np.ndarray, q: int) -> np.ndarray:
    if q & (q - 1) == 0:
        # halve pairwise so decimate(decimate(x,2),2) == decimate(x,4) exactly
        while q > 1:
            a = a[0::2, :] + a[1::2, :]
            a = a[:, 0::2] + a[:, 1::2]
            q //= 2
        return a
    h, w = a.shape
    return a.reshape(h // q, q, w // q, q).sum(axis=(1, 3))


def decimate(hr: Image, q: int) -> Image:
    """Average each q-by-q block of the HR image into one LR pixel."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if hr.height % q or hr.width % q:
        raise ValueError(
            f"image {hr.width}x{hr.height} not divisible by decimation factor {q}"
        )
    if q == 1:
        return hr
    return Image(_block_sum(hr.pixels, q) * (1.0 / (q * q)))


def add_noise(img: Image, sigma: float, seed: int) -> Image:
    """Add i.i.d. zero-mean Gaussian noise, clamped back to [0, 1].

    Samples come from numpy's seeded PCG64 generator in row-major order,
    so a given seed always produces the same output.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return img
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=img.pixels.shape)
    return Image(np.clip(img.pixels + noise, 0.0, 1.0))
