import numpy as np
import pytest

from dirsr.image import Image, Patch


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_image(rng):
    def make(h=32, w=32):
        return Image(rng.uniform(0.0, 1.0, (h, w)))

    return make


@pytest.fixture
def random_patch(rng):
    def make(n=8):
        return Patch(rng.standard_normal((n, n)))

    return make
