"""Training-set construction, direction-grouped persistence, MAD retrieval.

Each record pairs the six normalized detail bands of a 4x4 LR patch
with those of its 8x8 HR patch; records are grouped by the LR patch's
best direction pair so queries only scan one group.
"""

import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from .degrade import decimate
from .directionlet import best_direction, forward_awt21
from .image import Image, extract_patches, normalize_pair, pad_to_multiple
from .lattice import DirectionPair, canonical_pairs

MAGIC = b"DSR1"
FORMAT_VERSION = 1


class TrainingSetError(ValueError):
    """Base class for training-set persistence failures."""


class BadMagicError(TrainingSetError):
    pass


class VersionError(TrainingSetError):
    pass


class TruncatedError(TrainingSetError):
    pass


class ChecksumError(TrainingSetError):
    pass


@dataclass(frozen=True)
class TrainingRecord:
    image_id: int
    patch_row: int
    patch_col: int
    lr_details: np.ndarray  # (6, lr, lr), band order HL,HH,VL,VH,DL,DH
    hr_details: np.ndarray  # (6, hr, hr)

    def __eq__(self, other):
        return (
            isinstance(other, TrainingRecord)
            and (self.image_id, self.patch_row, self.patch_col)
            == (other.image_id, other.patch_row, other.patch_col)
            and np.array_equal(self.lr_details, other.lr_details)
            and np.array_equal(self.hr_details, other.hr_details)
        )


@dataclass(frozen=True)
class TrainsetMeta:
    version: int = FORMAT_VERSION
    q: int = 2
    lr_patch: int = 4
    hr_patch: int = 8
    filter_id: str = "daub4"
    mode: str = "oversampled"
    # not part of the file format, so excluded from equality
    image_count: int = field(default=0, compare=False)
    record_count: int = 0


@dataclass
class TrainingSet:
    meta: TrainsetMeta
    groups: list  # one list of TrainingRecords per canonical pair
    _mats: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.groups) != len(canonical_pairs()):
            raise ValueError("training set must have one group per canonical pair")

    def group_sizes(self):
        return [len(g) for g in self.groups]

    def group_matrix(self, pair_index: int) -> np.ndarray:
        """Stacked flat LR coefficients of one group, cached for scanning."""
        if pair_index not in self._mats:
            group = self.groups[pair_index]
            if group:
                self._mats[pair_index] = np.stack(
                    [r.lr_details.ravel() for r in group]
                )
            else:
                self._mats[pair_index] = np.empty((0, 0))
        return self._mats[pair_index]

    def __eq__(self, other):
        return (
            isinstance(other, TrainingSet)
            and self.meta == other.meta
            and self.groups == other.groups
        )


def _pair_index(pair: DirectionPair) -> int:
    for i, p in enumerate(canonical_pairs()):
        if p == pair:
            return i
    raise ValueError(f"pair {pair.name} is not canonical")


def build_training_set(corpus, config=None) -> TrainingSet:
    """Decompose a high-resolution corpus into direction-grouped records.

    Per image: decimate by q, tile HR/LR into matching patches in raster
    order, contrast-normalize each pair by the LR energy, transform both
    along the LR patch's best direction (oversampled) and keep the six
    detail bands of each.
    """
    from .superres import SRConfig

    cfg = config or SRConfig()
    if not corpus:
        raise ValueError("training corpus is empty")
    groups = [[] for _ in canonical_pairs()]
    total = 0
    for image_id, img in enumerate(corpus):
        if not isinstance(img, Image):
            raise TypeError(f"corpus entry {image_id} is not an Image")
        hr, _ = pad_to_multiple(img, cfg.hr_patch)
        lr = decimate(hr, cfg.q)
        hr_grid = extract_patches(hr, cfg.hr_patch)
        lr_grid = extract_patches(lr, cfg.lr_patch)
        for idx, (lp, hp) in enumerate(zip(lr_grid.patches, hr_grid.patches)):
            nl, nh, _ = normalize_pair(lp, hp, cfg.energy_floor)
            pair, _ = best_direction(nl)
            lr_bands = forward_awt21(nl, pair, "oversampled").detail_bands()
            hr_bands = forward_awt21(nh, pair, "oversampled").detail_bands()
            rec = TrainingRecord(
                image_id,
                idx // lr_grid.cols,
                idx % lr_grid.cols,
                np.stack(lr_bands),
                np.stack(hr_bands),
            )
            groups[_pair_index(pair)].append(rec)
            total += 1
    meta = TrainsetMeta(
        q=cfg.q,
        lr_patch=cfg.lr_patch,
        hr_patch=cfg.hr_patch,
        image_count=len(corpus),
        record_count=total,
    )
    return TrainingSet(meta, groups)


def query_mad(ts: TrainingSet, pair: DirectionPair, probe):
    """Closest record of the pair's group under the L1 (MAD) distance.

    ``probe`` is the six LR detail bands, normative order.  Returns
    (record, distance), or None when the group is empty.  Ties break
    toward the earliest inserted record.
    """
    from . import kernels

    i = _pair_index(pair)
    group = ts.groups[i]
    if not group:
        return None
    probe = np.asarray(probe, dtype=np.float64).ravel()
    mat = ts.group_matrix(i)
    if probe.size != mat.shape[1]:
        raise ValueError(f"probe has {probe.size} values, records have {mat.shape[1]}")
    best, dist = kernels.mad_scan(mat, probe)
    return group[best], dist


# --- persistence -----------------------------------------------------------

_HEADER = struct.Struct("<4sIIII8sBI")
_REC_HEAD = struct.Struct("<III")


def save(ts: TrainingSet) -> bytes:
    """Serialize to the little-endian DSR1 format with a CRC-32 trailer."""
    m = ts.meta
    parts = [
        _HEADER.pack(
            MAGIC,
            m.version,
            m.q,
            m.lr_patch,
            m.hr_patch,
            m.filter_id.encode("ascii").ljust(8),
            1 if m.mode == "oversampled" else 0,
            len(ts.groups),
        )
    ]
    for group in ts.groups:
        parts.append(struct.pack("<I", len(group)))
        for r in group:
            parts.append(_REC_HEAD.pack(r.image_id, r.patch_row, r.patch_col))
            parts.append(r.lr_details.astype("<f8").tobytes())
            parts.append(r.hr_details.astype("<f8").tobytes())
    parts.append(struct.pack("<Q", m.record_count))
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


def load(data: bytes) -> TrainingSet:
    """Parse the DSR1 format; raises a distinct error per failure mode."""
    if len(data) < 4:
        raise TruncatedError("file shorter than magic")
    if data[:4] != MAGIC:
        raise BadMagicError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    if len(data) < _HEADER.size:
        raise TruncatedError("truncated header")
    magic, version, q, lr_patch, hr_patch, filt, mode_byte, n_groups = _HEADER.unpack(
        data[: _HEADER.size]
    )
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format version {version}")
    if n_groups != len(canonical_pairs()):
        raise TrainingSetError(f"expected {len(canonical_pairs())} groups, got {n_groups}")
    if mode_byte not in (0, 1):
        raise TrainingSetError(f"bad mode byte {mode_byte}")
    lr_vals = 6 * lr_patch * lr_patch
    hr_vals = 6 * hr_patch * hr_patch
    rec_size = _REC_HEAD.size + 8 * (lr_vals + hr_vals)
    pos = _HEADER.size
    groups = []
    total = 0
    for _ in range(n_groups):
        if pos + 4 > len(data):
            raise TruncatedError("truncated group header")
        (count,) = struct.unpack_from("<I", data, pos)
        pos += 4
        group = []
        for _ in range(count):
            if pos + rec_size > len(data):
                raise TruncatedError("truncated record")
            image_id, prow, pcol = _REC_HEAD.unpack_from(data, pos)
            off = pos + _REC_HEAD.size
            lr = np.frombuffer(data, "<f8", lr_vals, off).reshape(6, lr_patch, lr_patch)
            hr = np.frombuffer(
                data, "<f8", hr_vals, off + 8 * lr_vals
            ).reshape(6, hr_patch, hr_patch)
            group.append(TrainingRecord(image_id, prow, pcol, lr.copy(), hr.copy()))
            pos += rec_size
        groups.append(group)
        total += count
    if pos + 12 > len(data):
        raise TruncatedError("truncated trailer")
    (stored_total,) = struct.unpack_from("<Q", data, pos)
    (stored_crc,) = struct.unpack_from("<I", data, pos + 8)
    if pos + 12 != len(data):
        raise TrainingSetError("trailing bytes after checksum")
    if zlib.crc32(data[: pos + 8]) != stored_crc:
        raise ChecksumError("CRC-32 mismatch")
    if stored_total != total:
        raise TrainingSetError(
            f"trailer record total {stored_total} != actual {total}"
        )
    meta = TrainsetMeta(
        version=version,
        q=q,
        lr_patch=lr_patch,
        hr_patch=hr_patch,
        filter_id=filt.decode("ascii").rstrip(" "),
        mode="oversampled" if mode_byte == 1 else "critical",
        image_count=0,
        record_count=total,
    )
    return TrainingSet(meta, groups)


def save_file(ts: TrainingSet, path):
    with open(path, "wb") as fh:
        fh.write(save(ts))


def load_file(path) -> TrainingSet:
    with open(path, "rb") as fh:
        return load(fh.read())
