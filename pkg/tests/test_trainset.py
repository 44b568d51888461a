import numpy as np
import pytest

from dirsr import demo
from dirsr.degrade import decimate
from dirsr.directionlet import best_direction, forward_awt21
from dirsr.image import Image, extract_patches, normalize_pair, pad_to_multiple
from dirsr.lattice import canonical_pairs
from dirsr.trainset import (
    BadMagicError,
    ChecksumError,
    TrainingRecord,
    TrainingSet,
    TrainsetMeta,
    TruncatedError,
    VersionError,
    build_training_set,
    load,
    query_mad,
    save,
)


@pytest.fixture(scope="module")
def small_corpus():
    return [
        demo.stripes(32, 45, 0.2),
        demo.checkerboard(32, 4),
        demo.blobs(32, 4, seed=9),
    ]


@pytest.fixture(scope="module")
def small_ts(small_corpus):
    return build_training_set(small_corpus)


def _random_ts(rng, count):
    groups = [[] for _ in canonical_pairs()]
    for i in range(count):
        rec = TrainingRecord(
            i, i % 7, i % 5,
            rng.standard_normal((6, 4, 4)),
            rng.standard_normal((6, 8, 8)),
        )
        groups[i % 5].append(rec)
    return TrainingSet(TrainsetMeta(record_count=count), groups)


class TestBuild:
    def test_record_count(self, small_corpus, small_ts):
        # 32x32 HR -> 16 patches of 8x8 per image
        assert small_ts.meta.record_count == 16 * len(small_corpus)
        assert sum(small_ts.group_sizes()) == small_ts.meta.record_count

    def test_rebuild_oracle(self, small_corpus, small_ts):
        # recompute one record of each image from scratch
        flat = {
            (r.image_id, r.patch_row, r.patch_col): r
            for g in small_ts.groups
            for r in g
        }
        for image_id, img in enumerate(small_corpus):
            hr, _ = pad_to_multiple(img, 8)
            lr = decimate(hr, 2)
            lr_grid = extract_patches(lr, 4)
            hr_grid = extract_patches(hr, 8)
            idx = 5
            lp, hp = lr_grid.patches[idx], hr_grid.patches[idx]
            nl, nh, _ = normalize_pair(lp, hp)
            pair, _ = best_direction(nl)
            rec = flat[(image_id, idx // lr_grid.cols, idx % lr_grid.cols)]
            want_lr = np.stack(forward_awt21(nl, pair, "oversampled").detail_bands())
            want_hr = np.stack(forward_awt21(nh, pair, "oversampled").detail_bands())
            assert np.array_equal(rec.lr_details, want_lr)
            assert np.array_equal(rec.hr_details, want_hr)
            # and the record really lives in the group of its best pair
            gi = canonical_pairs().index(pair)
            assert rec in small_ts.groups[gi]

    def test_rejects_empty_corpus(self):
        with pytest.raises(ValueError, match="empty"):
            build_training_set([])

    def test_rejects_non_images(self):
        with pytest.raises(TypeError):
            build_training_set([np.zeros((8, 8))])


class TestQuery:
    def test_matches_linear_scan_oracle(self, rng, small_ts):
        for gi, pair in enumerate(canonical_pairs()):
            group = small_ts.groups[gi]
            if not group:
                continue
            probe = rng.standard_normal((6, 4, 4))
            rec, dist = query_mad(small_ts, pair, probe)
            dists = [np.abs(r.lr_details - probe).sum() for r in group]
            best = int(np.argmin(dists))
            assert rec is group[best]
            assert dist == pytest.approx(dists[best])

    def test_ties_break_to_earliest(self, rng):
        groups = [[] for _ in canonical_pairs()]
        bands = rng.standard_normal((6, 4, 4))
        # two records with identical coefficients
        groups[0] = [
            TrainingRecord(0, 0, 0, bands.copy(), rng.standard_normal((6, 8, 8))),
            TrainingRecord(1, 0, 0, bands.copy(), rng.standard_normal((6, 8, 8))),
        ]
        ts = TrainingSet(TrainsetMeta(record_count=2), groups)
        rec, dist = query_mad(ts, canonical_pairs()[0], bands)
        assert rec is ts.groups[0][0]
        assert dist == 0.0

    def test_empty_group_returns_none(self):
        ts = TrainingSet(TrainsetMeta(), [[] for _ in canonical_pairs()])
        assert query_mad(ts, canonical_pairs()[0], np.zeros((6, 4, 4))) is None

    def test_rejects_bad_probe_size(self, small_ts):
        with pytest.raises(ValueError, match="probe"):
            query_mad(small_ts, canonical_pairs()[0], np.zeros((6, 3, 3)))


class TestPersistence:
    def test_roundtrip_equality(self, small_ts):
        data = save(small_ts)
        loaded = load(data)
        assert loaded == small_ts
        assert save(loaded) == data

    def test_roundtrip_random(self, rng):
        ts = _random_ts(rng, 40)
        assert load(save(ts)) == ts

    def test_bad_magic(self, small_ts):
        data = bytearray(save(small_ts))
        data[0] ^= 0xFF
        with pytest.raises(BadMagicError):
            load(bytes(data))

    def test_bad_version(self, small_ts):
        data = bytearray(save(small_ts))
        data[4] = 99
        with pytest.raises(VersionError):
            load(bytes(data))

    def test_payload_corruption_detected(self, small_ts):
        data = bytearray(save(small_ts))
        data[len(data) // 2] ^= 0x01
        with pytest.raises(ChecksumError):
            load(bytes(data))

    def test_truncation_detected(self, small_ts):
        data = save(small_ts)
        for cut in (2, 10, len(data) // 2, len(data) - 1):
            with pytest.raises(TruncatedError):
                load(data[:cut])

    def test_trailing_garbage_rejected(self, small_ts):
        from dirsr.trainset import TrainingSetError

        with pytest.raises(TrainingSetError):
            load(save(small_ts) + b"\x00\x00\x00\x00")
