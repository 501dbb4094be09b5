"""Integer raster images with an explicit intensity ceiling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import prng

MAX_CEILING = 0xFFFF


def round_half_away(x: np.ndarray) -> np.ndarray:
    """Round to nearest integer, halves away from zero (not banker's)."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x >= 0, np.floor(x + 0.5), np.ceil(x - 0.5))


def clamp_round(x: np.ndarray, ceiling: int) -> np.ndarray:
    """Round half away from zero, then clamp into [0, ceiling]."""
    return np.clip(round_half_away(x), 0, ceiling).astype(np.uint16)


@dataclass
class Image:
    """Pixel grid of shape (height, width, channels), values in [0, ceiling].

    Row-major, channel-interleaved: flattening in C order yields the
    canonical element sequence used everywhere (streams, kernels, files).
    """

    pixels: np.ndarray
    ceiling: int

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3:
            raise ValueError("pixels must have shape (height, width, channels)")
        if arr.shape[2] not in (1, 3):
            raise ValueError("channels must be 1 or 3")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if not 1 <= self.ceiling <= MAX_CEILING:
            raise ValueError(f"ceiling must be in [1, {MAX_CEILING}]")
        if arr.min() < 0 or arr.max() > self.ceiling:
            raise ValueError("pixel value out of [0, ceiling]")
        self.pixels = np.ascontiguousarray(arr, dtype=np.uint16)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    def flat(self) -> np.ndarray:
        return self.pixels.reshape(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return (self.ceiling == other.ceiling
                and self.pixels.shape == other.pixels.shape
                and bool(np.array_equal(self.pixels, other.pixels)))

    @classmethod
    def from_flat(cls, width: int, height: int, channels: int,
                  ceiling: int, values) -> "Image":
        arr = np.asarray(values).reshape(height, width, channels)
        return cls(arr, ceiling)


def invert_image(img: Image) -> Image:
    """Pointwise inversion: every intensity x becomes ceiling - x."""
    return Image(img.ceiling - img.pixels.astype(np.int64), img.ceiling)


def random_image(width: int, height: int, channels: int = 1,
                 ceiling: int = 255, seed: int = 0) -> Image:
    """Uniform-random image drawn from the seed's stream, row-major."""
    n = width * height * channels
    vals = prng.value_block(seed, 0, 1, n, ceiling)[0]
    return Image.from_flat(width, height, channels, ceiling, vals)


def synthetic_scene(width: int = 64, height: int = 64,
                    ceiling: int = 255) -> Image:
    """Smooth grayscale test scene: gradient, two blobs, soft ripple.

    Deterministic, no randomness; stands in for a natural photograph in
    experiments that need spatially correlated content.
    """
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    xn = x / max(width - 1, 1)
    yn = y / max(height - 1, 1)
    # Bright on purpose: brightening a scene that straddles mid-gray flips
    # most plane comparisons and the fingerprint nearly inverts.
    v = 150.0 + 30.0 * xn + 12.0 * yn
    v += 40.0 * np.exp(-(((x - 0.33 * width) ** 2) + (y - 0.40 * height) ** 2)
                       / (2 * (0.30 * width) ** 2))
    v += 28.0 * np.exp(-(((x - 0.72 * width) ** 2) + (y - 0.68 * height) ** 2)
                       / (2 * (0.22 * width) ** 2))
    v += 6.0 * np.sin(2 * np.pi * xn * 1.5) * np.cos(2 * np.pi * yn * 1.2)
    v *= (ceiling / 255.0)
    return Image(clamp_round(v, ceiling)[:, :, None], ceiling)
