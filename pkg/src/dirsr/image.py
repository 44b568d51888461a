"""Grayscale image values, PGM (P2/P5) codec, patch tiling and contrast energy."""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_ENERGY_FLOOR = 0.01


class PgmFormatError(ValueError):
    """Raised when a PGM byte stream cannot be decoded."""


@dataclass(frozen=True)
class Image:
    """A 2-D grayscale image with float64 intensities in [0, 1].

    ``pixels`` is a read-only (height, width) array.
    """

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels, dtype=np.float64)
        if a.ndim != 2 or a.size == 0:
            raise ValueError("image pixels must be a non-empty 2-D array")
        if a.min() < 0.0 or a.max() > 1.0:
            raise ValueError("image intensities must lie in [0, 1]")
        a = np.ascontiguousarray(a)
        a.flags.writeable = False
        object.__setattr__(self, "pixels", a)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @classmethod
    def from_array(cls, a, clip: bool = False) -> "Image":
        a = np.asarray(a, dtype=np.float64)
        if clip:
            a = np.clip(a, 0.0, 1.0)
        return cls(a)

    def __eq__(self, other):
        return isinstance(other, Image) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True)
class Patch:
    """An n-by-n tile of intensities with its top-left origin (row, col)."""

    values: np.ndarray
    origin: tuple = (0, 0)

    def __post_init__(self):
        a = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError("patch values must be a square 2-D array")
        a.flags.writeable = False
        object.__setattr__(self, "values", a)

    @property
    def size(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class PatchGrid:
    rows: int
    cols: int
    patch_size: int
    patches: tuple = field(default=())

    def __post_init__(self):
        if len(self.patches) != self.rows * self.cols:
            raise ValueError("patch count does not match grid shape")


def _tokenize_header(data: bytes, count: int):
    """Pull `count` whitespace-separated header tokens, skipping # comments.

    Returns (tokens, offset just past the single whitespace byte that
    terminates the last token).
    """
    tokens = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] != ord("\n"):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace() and data[i] != ord("#"):
            i += 1
        if i == start:
            raise PgmFormatError("truncated PGM header")
        tokens.append(data[start:i])
        if len(tokens) == count:
            # exactly one whitespace byte separates the header from the payload
            if i >= n or not data[i : i + 1].isspace():
                raise PgmFormatError("missing separator after maxval")
            i += 1
    return tokens, i


def read_pgm(data: bytes) -> Image:
    """Decode a P2 (ASCII) or P5 (binary) PGM byte stream.

    Intensities are scaled to [0, 1] by maxval; 16-bit P5 samples are
    big-endian per the PGM convention.
    """
    magic = data[:2]
    if magic in (b"P3", b"P6"):
        raise PgmFormatError(
            "color PPM input is not supported; extract a luminance channel first"
        )
    if magic not in (b"P2", b"P5"):
        raise PgmFormatError(f"bad magic {magic!r}: expected P2 or P5")
    try:
        tokens, offset = _tokenize_header(data[2:], 3)
    except PgmFormatError:
        raise
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise PgmFormatError(f"non-numeric header field in {tokens!r}") from None
    if width <= 0 or height <= 0:
        raise PgmFormatError(f"bad dimensions {width}x{height}")
    if maxval <= 0:
        raise PgmFormatError(f"maxval must be positive, got {maxval}")
    if maxval > 65535:
        raise PgmFormatError(f"maxval {maxval} exceeds 65535")
    body = data[2 + offset :]
    count = width * height
    if magic == b"P5":
        if maxval > 255:
            raw = body[: 2 * count]
            if len(raw) < 2 * count:
                raise PgmFormatError("truncated P5 payload")
            samples = np.frombuffer(raw, dtype=">u2").astype(np.float64)
        else:
            if len(body) < count:
                raise PgmFormatError("truncated P5 payload")
            samples = np.frombuffer(body[:count], dtype=np.uint8).astype(np.float64)
    else:
        fields = body.split()
        if len(fields) < count:
            raise PgmFormatError("truncated P2 payload")
        try:
            samples = np.array([int(f) for f in fields[:count]], dtype=np.float64)
        except ValueError:
            raise PgmFormatError("non-numeric P2 sample") from None
    if samples.min() < 0 or samples.max() > maxval:
        raise PgmFormatError("sample value outside [0, maxval]")
    return Image(samples.reshape(height, width) / maxval)


def write_pgm(img: Image, mode: str = "binary", maxval: int = 255) -> bytes:
    """Encode an image as deterministic PGM bytes.

    Samples are round(v * maxval) clamped to [0, maxval].  ASCII output
    uses single-space separators with one row per line.
    """
    if not 1 <= maxval <= 65535:
        raise ValueError(f"maxval must be in [1, 65535], got {maxval}")
    if mode not in ("ascii", "binary"):
        raise ValueError(f"mode must be 'ascii' or 'binary', got {mode!r}")
    samples = np.clip(np.rint(img.pixels * maxval), 0, maxval).astype(np.uint32)
    magic = b"P2" if mode == "ascii" else b"P5"
    header = b"%s\n%d %d\n%d\n" % (magic, img.width, img.height, maxval)
    if mode == "ascii":
        body = b"\n".join(
            b" ".join(b"%d" % v for v in row) for row in samples
        ) + b"\n"
    elif maxval > 255:
        body = samples.astype(">u2").tobytes()
    else:
        body = samples.astype(np.uint8).tobytes()
    return header + body


def pad_to_multiple(img: Image, n: int):
    """Edge-replicate an image up to the next multiple of ``n`` per axis.

    Returns (padded image, (original_height, original_width)).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    h, w = img.height, img.width
    new_h = -(-h // n) * n
    new_w = -(-w // n) * n
    if (new_h, new_w) == (h, w):
        return img, (h, w)
    padded = np.pad(img.pixels, ((0, new_h - h), (0, new_w - w)), mode="edge")
    return Image(padded), (h, w)


def crop(img: Image, dims) -> Image:
    h, w = dims
    if h > img.height or w > img.width:
        raise ValueError("crop dimensions exceed image size")
    return Image(img.pixels[:h, :w])


def extract_patches(img: Image, n: int) -> PatchGrid:
    """Tile the image into non-overlapping n-by-n patches in raster order."""
    if img.height % n or img.width % n:
        raise ValueError(
            f"image {img.width}x{img.height} not divisible by patch size {n}"
        )
    rows, cols = img.height // n, img.width // n
    patches = tuple(
        Patch(img.pixels[r * n : (r + 1) * n, c * n : (c + 1) * n], (r * n, c * n))
        for r in range(rows)
        for c in range(cols)
    )
    return PatchGrid(rows, cols, n, patches)


def stitch_patches(grid: PatchGrid) -> Image:
    """Exact inverse of extract_patches."""
    n = grid.patch_size
    out = np.empty((grid.rows * n, grid.cols * n), dtype=np.float64)
    for i, p in enumerate(grid.patches):
        r, c = divmod(i, grid.cols)
        out[r * n : (r + 1) * n, c * n : (c + 1) * n] = p.values
    return Image(out)


def patch_energy(p: Patch, floor: float = DEFAULT_ENERGY_FLOOR) -> float:
    """Contrast energy: floor + sum of absolute intensities.

    The additive floor (0.01 by default) keeps later divisions defined
    for all-zero patches.
    """
    return floor + float(np.abs(p.values).sum())


def normalize_pair(lr: Patch, hr: Patch, floor: float = DEFAULT_ENERGY_FLOOR):
    """Divide both patches by the LR patch's energy.

    Returns (normalized lr, normalized hr, energy); the energy is kept
    so the normalization can be undone after reconstruction.
    """
    e = patch_energy(lr, floor)
    return Patch(lr.values / e, lr.origin), Patch(hr.values / e, hr.origin), e
