import numpy as np
import pytest

from infokernel.images import Image


@pytest.fixture
def tiny_gray() -> Image:
    rng = np.random.default_rng(1234)
    return Image(rng.integers(0, 256, (6, 5, 1)), 255)


@pytest.fixture
def tiny_rgb() -> Image:
    rng = np.random.default_rng(4321)
    return Image(rng.integers(0, 256, (4, 4, 3)), 255)
