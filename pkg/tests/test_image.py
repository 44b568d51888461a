import numpy as np
import pytest

from dirsr.image import (
    Image,
    Patch,
    PgmFormatError,
    crop,
    extract_patches,
    normalize_pair,
    pad_to_multiple,
    patch_energy,
    read_pgm,
    stitch_patches,
    write_pgm,
)


class TestImage:
    def test_valid_construction(self):
        img = Image(np.zeros((3, 4)))
        assert img.height == 3 and img.width == 4

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Image(np.full((2, 2), 1.5))
        with pytest.raises(ValueError):
            Image(np.full((2, 2), -0.1))

    def test_rejects_non_2d_and_empty(self):
        with pytest.raises(ValueError):
            Image(np.zeros(4))
        with pytest.raises(ValueError):
            Image(np.zeros((0, 3)))

    def test_pixels_read_only(self):
        img = Image(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 1.0

    def test_from_array_clip(self):
        img = Image.from_array([[2.0, -1.0]] * 2, clip=True)
        assert img.pixels.max() == 1.0 and img.pixels.min() == 0.0
        with pytest.raises(ValueError):
            Image.from_array([[2.0, -1.0]] * 2)

    def test_equality(self, random_image):
        a = random_image(8, 8)
        assert a == Image(a.pixels.copy())
        assert a != Image(np.zeros((8, 8)))
        assert a != "not an image"


class TestPgm:
    def test_binary_roundtrip_8bit(self, random_image):
        img = random_image(5, 7)
        out = read_pgm(write_pgm(img, "binary", 255))
        assert np.abs(out.pixels - img.pixels).max() <= 0.5 / 255

    def test_binary_roundtrip_16bit(self, random_image):
        img = random_image(6, 4)
        out = read_pgm(write_pgm(img, "binary", 65535))
        assert np.abs(out.pixels - img.pixels).max() <= 0.5 / 65535

    def test_ascii_roundtrip(self, random_image):
        img = random_image(4, 9)
        data = write_pgm(img, "ascii", 255)
        assert data.startswith(b"P2\n9 4\n255\n")
        out = read_pgm(data)
        assert np.abs(out.pixels - img.pixels).max() <= 0.5 / 255

    def test_write_deterministic(self, random_image):
        img = random_image(8, 8)
        assert write_pgm(img) == write_pgm(Image(img.pixels.copy()))

    def test_header_comments(self):
        data = b"P2\n# a comment\n2 2 # trailing\n255\n0 255 128 7\n"
        img = read_pgm(data)
        assert img.pixels.shape == (2, 2)
        assert img.pixels[0, 1] == 1.0

    def test_rejects_color(self):
        with pytest.raises(PgmFormatError, match="luminance"):
            read_pgm(b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(PgmFormatError, match="luminance"):
            read_pgm(b"P3\n1 1\n255\n0 0 0\n")

    def test_rejects_bad_magic(self):
        with pytest.raises(PgmFormatError, match="magic"):
            read_pgm(b"Q5\n1 1\n255\n\x00")

    def test_rejects_truncated_payload(self):
        with pytest.raises(PgmFormatError, match="truncated"):
            read_pgm(b"P5\n2 2\n255\n\x00\x00")
        with pytest.raises(PgmFormatError, match="truncated"):
            read_pgm(b"P2\n2 2\n255\n0 1 2\n")

    def test_rejects_bad_header_values(self):
        with pytest.raises(PgmFormatError):
            read_pgm(b"P2\n0 2\n255\n")
        with pytest.raises(PgmFormatError):
            read_pgm(b"P2\n2 2\n0\n0 0 0 0\n")
        with pytest.raises(PgmFormatError):
            read_pgm(b"P2\n2 2\n70000\n0 0 0 0\n")
        with pytest.raises(PgmFormatError, match="non-numeric"):
            read_pgm(b"P2\nx 2\n255\n0 0\n")

    def test_rejects_sample_above_maxval(self):
        with pytest.raises(PgmFormatError):
            read_pgm(b"P2\n1 1\n100\n101\n")

    def test_write_rejects_bad_args(self, random_image):
        img = random_image(2, 2)
        with pytest.raises(ValueError):
            write_pgm(img, "weird")
        with pytest.raises(ValueError):
            write_pgm(img, "binary", 0)


class TestPatching:
    def test_pad_to_multiple(self):
        img = Image(np.arange(6.0).reshape(2, 3) / 5.0)
        padded, orig = pad_to_multiple(img, 4)
        assert orig == (2, 3)
        assert padded.pixels.shape == (4, 4)
        # edge replication
        assert np.array_equal(padded.pixels[2], padded.pixels[1])
        assert np.array_equal(padded.pixels[:, 3], padded.pixels[:, 2])
        assert crop(padded, orig) == img

    def test_pad_noop_when_divisible(self, random_image):
        img = random_image(8, 8)
        padded, orig = pad_to_multiple(img, 4)
        assert padded is img and orig == (8, 8)

    def test_extract_stitch_roundtrip(self, random_image):
        img = random_image(12, 8)
        grid = extract_patches(img, 4)
        assert (grid.rows, grid.cols) == (3, 2)
        assert stitch_patches(grid) == img

    def test_extract_raster_order(self):
        img = Image(np.arange(16.0).reshape(4, 4) / 15.0)
        grid = extract_patches(img, 2)
        origins = [p.origin for p in grid.patches]
        assert origins == [(0, 0), (0, 2), (2, 0), (2, 2)]

    def test_extract_rejects_non_divisible(self, random_image):
        with pytest.raises(ValueError):
            extract_patches(random_image(10, 8), 4)

    def test_patch_must_be_square(self):
        with pytest.raises(ValueError):
            Patch(np.zeros((2, 3)))


class TestEnergy:
    def test_patch_energy_floor(self):
        zero = Patch(np.zeros((4, 4)))
        assert patch_energy(zero) == 0.01
        assert patch_energy(zero, floor=0.0) == 0.0

    def test_patch_energy_sums_abs(self):
        p = Patch(np.array([[1.0, -2.0], [0.5, 0.0]]))
        assert patch_energy(p) == pytest.approx(0.01 + 3.5)

    def test_normalize_pair(self, rng):
        lr = Patch(rng.uniform(0, 1, (4, 4)))
        hr = Patch(rng.uniform(0, 1, (8, 8)))
        nl, nh, e = normalize_pair(lr, hr)
        assert e == patch_energy(lr)
        assert np.allclose(nl.values * e, lr.values)
        assert np.allclose(nh.values * e, hr.values)
