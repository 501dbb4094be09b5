import numpy as np
import pytest

from infokernel.images import (Image, clamp_round, invert_image, random_image,
                               round_half_away, synthetic_scene)


def test_round_half_away_from_zero():
    vals = round_half_away(np.array([0.5, 1.5, 2.5, -0.5, -1.5, 2.4, -2.4]))
    assert vals.tolist() == [1.0, 2.0, 3.0, -1.0, -2.0, 2.0, -2.0]


def test_clamp_round_bounds():
    out = clamp_round(np.array([-3.2, 0.0, 127.5, 300.0]), 255)
    assert out.tolist() == [0, 0, 128, 255]
    assert out.dtype == np.uint16


def test_image_accepts_2d_gray():
    img = Image(np.zeros((3, 4)), 255)
    assert (img.height, img.width, img.channels) == (3, 4, 1)


def test_image_validation():
    with pytest.raises(ValueError, match="channels"):
        Image(np.zeros((2, 2, 2)), 255)
    with pytest.raises(ValueError, match="ceiling"):
        Image(np.zeros((2, 2, 1)), 0)
    with pytest.raises(ValueError, match="out of"):
        Image(np.full((2, 2, 1), 300), 255)
    with pytest.raises(ValueError, match="dimensions"):
        Image(np.zeros((0, 2, 1)), 255)


def test_from_flat_row_major_interleaved():
    img = Image.from_flat(2, 1, 3, 255, [1, 2, 3, 4, 5, 6])
    assert list(img.pixels[0, 0]) == [1, 2, 3]
    assert list(img.pixels[0, 1]) == [4, 5, 6]
    assert list(img.flat()) == [1, 2, 3, 4, 5, 6]


def test_invert_involution_and_values(tiny_rgb):
    assert invert_image(invert_image(tiny_rgb)) == tiny_rgb
    img = Image.from_flat(2, 1, 1, 255, [0, 200])
    assert list(invert_image(img).flat()) == [255, 55]
    mid = Image.from_flat(1, 1, 1, 254, [127])
    assert invert_image(mid) == mid


def test_random_image_is_deterministic():
    a = random_image(5, 4, 3, 17, seed=99)
    b = random_image(5, 4, 3, 17, seed=99)
    c = random_image(5, 4, 3, 17, seed=100)
    assert a == b
    assert a != c
    assert int(a.pixels.max()) <= 17


def test_synthetic_scene_shape_and_spread():
    img = synthetic_scene()
    assert (img.width, img.height, img.channels, img.ceiling) == (64, 64, 1, 255)
    assert synthetic_scene() == img
    # bright, smooth content with real dynamic range
    assert 120 < int(img.pixels.min()) < int(img.pixels.max()) < 256
    assert int(img.pixels.max()) - int(img.pixels.min()) > 40
