"""Procedurally generated demo corpus.

Deterministic synthetic images (gradients, checkerboards, oriented
stripes and edges, blob scenes) so end-to-end runs and the acceptance
suite need no external downloads.
"""

import numpy as np
from scipy import ndimage

from .image import Image


def _grid(size):
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    return y / size, x / size


def stripes(size, angle_deg, period, phase=0.0) -> Image:
    """Sinusoidal stripes orthogonal to the given angle."""
    y, x = _grid(size)
    theta = np.deg2rad(angle_deg)
    t = np.cos(theta) * x + np.sin(theta) * y
    return Image(0.5 + 0.5 * np.sin(2.0 * np.pi * t / period + phase))


def hard_stripes(size, angle_deg, period, phase=0.0) -> Image:
    """Binary (thresholded) stripes; aliases strongly when decimated."""
    s = stripes(size, angle_deg, period, phase)
    return Image((s.pixels > 0.5).astype(np.float64))


def edge(size, angle_deg, offset=0.5, soft=0.0) -> Image:
    """A step edge (optionally slightly blurred) through the image."""
    y, x = _grid(size)
    theta = np.deg2rad(angle_deg)
    t = np.cos(theta) * x + np.sin(theta) * y - offset
    img = (t > 0).astype(np.float64)
    if soft > 0:
        img = ndimage.gaussian_filter(img, soft, mode="nearest")
    return Image(np.clip(img, 0.0, 1.0))


def checkerboard(size, cell) -> Image:
    y, x = np.mgrid[0:size, 0:size]
    return Image(((y // cell + x // cell) % 2).astype(np.float64))


def gradient(size, angle_deg=0.0) -> Image:
    y, x = _grid(size)
    theta = np.deg2rad(angle_deg)
    t = np.cos(theta) * x + np.sin(theta) * y
    t -= t.min()
    return Image(t / t.max())


def blobs(size, count, seed, sigma_range=(0.03, 0.12)) -> Image:
    """Sum of random Gaussian bumps on a soft background."""
    rng = np.random.default_rng(seed)
    y, x = _grid(size)
    img = np.full((size, size), 0.25)
    for _ in range(count):
        cy, cx = rng.uniform(0, 1, 2)
        s = rng.uniform(*sigma_range)
        amp = rng.uniform(-0.6, 0.9)
        img += amp * np.exp(-((y - cy) ** 2 + (x - cx) ** 2) / (2 * s * s))
    return Image(np.clip(img, 0.0, 1.0))


def scene(size, seed) -> Image:
    """Photographic-style composite: gradient sky, shapes, texture."""
    rng = np.random.default_rng(seed)
    y, x = _grid(size)
    img = 0.3 + 0.4 * y  # vertical luminance ramp
    for _ in range(4):
        cy, cx = rng.uniform(0.15, 0.85, 2)
        r = rng.uniform(0.08, 0.22)
        amp = rng.uniform(-0.5, 0.6)
        disk = ((y - cy) ** 2 + (x - cx) ** 2) < r * r
        img = np.where(disk, np.clip(img + amp, 0, 1), img)
    for _ in range(3):
        angle = rng.uniform(0, 180)
        theta = np.deg2rad(angle)
        t = np.cos(theta) * x + np.sin(theta) * y
        band = (np.abs(t - rng.uniform(0.2, 0.8)) < rng.uniform(0.01, 0.04))
        img = np.where(band, np.clip(img + rng.uniform(-0.5, 0.5), 0, 1), img)
    texture = ndimage.gaussian_filter(rng.standard_normal((size, size)), 1.5)
    img = img + 0.05 * texture / max(np.abs(texture).max(), 1e-9)
    return Image(np.clip(img, 0.0, 1.0))


def training_corpus(size=128):
    """Seventeen named high-resolution training images.

    Twelve hard-stripe images cover four orientations at moderate
    periods; the rest add scenes, blobs, a checkerboard and mixed
    edges so the groups see non-striped content too.
    """
    images = []
    for ang in (45, 135, 0, 90):
        for per, ph in ((0.05, 0.0), (0.07, 0.9), (0.06, 1.7)):
            images.append(
                (f"stripes{ang}_p{int(per * 1000)}", hard_stripes(size, ang, per, ph))
            )
    images += [
        ("scene_a", scene(size, seed=21)),
        ("scene_b", scene(size, seed=22)),
        ("blobs_a", blobs(size, 14, seed=11)),
        ("checker", checkerboard(size, 6)),
        ("edges_mix", _edge_mix(size, seed=7)),
    ]
    return images


def _edge_mix(size, seed):
    rng = np.random.default_rng(seed)
    y, x = _grid(size)
    img = np.full((size, size), 0.5)
    for angle in (0, 45, 90, 135, 30, 60, 120, 150):
        theta = np.deg2rad(angle)
        t = np.cos(theta) * x + np.sin(theta) * y
        img = np.where(t > rng.uniform(0.3, 0.7), 1.0 - img, img)
    return Image(np.clip(img, 0.0, 1.0))


def test_images(size=128):
    """Eight held-out test images, parameter-disjoint from the corpus.

    The first two are high-frequency diagonal-stripe images whose
    decimation aliases badly; the rest are finer stripes at periods
    between the training ones, plus an unseen composite scene.
    """
    return [
        ("aliased_diag_a", hard_stripes(size, 45, 0.033, phase=0.4)),
        ("aliased_diag_b", hard_stripes(size, 135, 0.033, phase=1.3)),
        ("fine_45a", hard_stripes(size, 45, 0.05, phase=1.3)),
        ("fine_135a", hard_stripes(size, 135, 0.05, phase=0.4)),
        ("fine_45b", hard_stripes(size, 45, 0.065, phase=0.4)),
        ("fine_135b", hard_stripes(size, 135, 0.065, phase=1.3)),
        ("fine_45c", hard_stripes(size, 45, 0.06, phase=2.2)),
        ("shapes", scene(size, seed=99)),
    ]


def self_training_images(size=256):
    """Five ground-truth images for the self-training consistency check."""
    return [
        ("st_stripes45", stripes(size, 45, 0.06)),
        ("st_stripes135", stripes(size, 135, 0.08, phase=0.7)),
        ("st_checker", checkerboard(size, 10)),
        ("st_scene", scene(size, seed=5)),
        ("st_blobs", blobs(size, 18, seed=3)),
    ]
