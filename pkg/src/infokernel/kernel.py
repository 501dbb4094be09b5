"""Sampled fingerprints for images via antithetic random planes.

Bit i of a fingerprint compares the image's summed absolute deviation
from a pseudorandom plane against the deviation from that plane's
pointwise inversion: 1 when the plane is strictly closer, 0 otherwise
(ties included). Two fingerprints built with identical parameters agree
bit-for-bit exactly as often as the underlying comparisons agree, which
makes plain bit agreement a similarity measure.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import engine, prng
from .images import MAX_CEILING, Image
from .similarity import SimilarityResult

DEFAULT_BIT_COUNT = 60_000
DEFAULT_SEED = 0


@dataclass(frozen=True)
class KernelParams:
    """Everything that determines a fingerprint besides the image itself.

    Two kernels are comparable iff every field is equal; comparing across
    differing params is an error, never a silent coercion.
    """

    seed: int
    bit_count: int
    ceiling: int
    width: int
    height: int
    channels: int

    def __post_init__(self):
        if not 0 <= self.seed < (1 << 64):
            raise ValueError("seed must fit in 64 bits")
        if self.bit_count < 1:
            raise ValueError("bit_count must be >= 1")
        if not 1 <= self.ceiling <= MAX_CEILING:
            raise ValueError(f"ceiling must be in [1, {MAX_CEILING}]")
        if not 1 <= self.width < (1 << 32) or not 1 <= self.height < (1 << 32):
            raise ValueError("width and height must be positive 32-bit values")
        if self.channels not in (1, 3):
            raise ValueError("channels must be 1 or 3")

    @classmethod
    def for_image(cls, img: Image, bit_count: int = DEFAULT_BIT_COUNT,
                  seed: int = DEFAULT_SEED) -> "KernelParams":
        return cls(seed=seed, bit_count=bit_count, ceiling=img.ceiling,
                   width=img.width, height=img.height, channels=img.channels)

    def matches_image(self, img: Image) -> bool:
        return (self.ceiling == img.ceiling and self.width == img.width
                and self.height == img.height and self.channels == img.channels)

    @property
    def pixel_values(self) -> int:
        return self.width * self.height * self.channels


@dataclass
class Kernel:
    """A fingerprint: its parameters and bit_count bits (one byte per bit)."""

    params: KernelParams
    bits: np.ndarray
    is_template: bool = field(default=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.bits), dtype=np.uint8)
        if arr.ndim != 1 or arr.shape[0] != self.params.bit_count:
            raise ValueError("bit vector length must equal params.bit_count")
        if arr.max(initial=0) > 1:
            raise ValueError("bits must be 0 or 1")
        self.bits = arr

    def __eq__(self, other) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return (self.params == other.params
                and self.is_template == other.is_template
                and bool(np.array_equal(self.bits, other.bits)))

    def packed(self) -> bytes:
        """Bits packed MSB-first per byte, zero-padded to a byte boundary."""
        return np.packbits(self.bits).tobytes()

    @classmethod
    def from_packed(cls, params: KernelParams, payload: bytes,
                    is_template: bool = False) -> "Kernel":
        bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8),
                             count=params.bit_count)
        return cls(params, bits, is_template)


def _require_match(img: Image, params: KernelParams) -> None:
    if not params.matches_image(img):
        raise ValueError("image does not match kernel params")


def generate_plane(params: KernelParams, bit_index: int) -> np.ndarray:
    """The pseudorandom plane owned by one bit, shaped like the image.

    Values come from the bit's own stream in row-major channel-interleaved
    order. The antithetic partner plane is never generated; it is defined
    as ceiling - plane, pointwise.
    """
    if not 0 <= bit_index < params.bit_count:
        raise ValueError("bit_index out of range")
    vals = prng.value_block(params.seed, bit_index, 1,
                            params.pixel_values, params.ceiling)[0]
    return vals.astype(np.uint16).reshape(
        params.height, params.width, params.channels)


def deviation(img: Image, plane: np.ndarray) -> int:
    """Sum of absolute differences between image and plane."""
    if plane.shape != img.pixels.shape:
        raise ValueError("shape mismatch")
    return int(np.abs(img.pixels.astype(np.int64)
                      - plane.astype(np.int64)).sum())


def bit_deviations(img: Image, params: KernelParams, bit_index: int) -> tuple:
    """(deviation from plane, deviation from inverted plane) for one bit."""
    _require_match(img, params)
    plane = generate_plane(params, bit_index)
    d1 = deviation(img, plane)
    d2 = deviation(img, (params.ceiling - plane.astype(np.int64)))
    return d1, d2


def kernel_bit(img: Image, params: KernelParams, bit_index: int) -> int:
    """1 iff the bit's plane is strictly closer than its inversion, else 0."""
    d1, d2 = bit_deviations(img, params, bit_index)
    return 1 if d1 < d2 else 0


@contextmanager
def _thread_count(workers):
    if workers is None:
        yield
        return
    import numba

    if workers < 1:
        raise ValueError("workers must be >= 1")
    prev = numba.get_num_threads()
    numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    try:
        yield
    finally:
        numba.set_num_threads(prev)


def _run_engine(img: Image, params: KernelParams, workers=None):
    _require_match(img, params)
    m = params.ceiling + 1
    reject = (1 << 64) % m
    limit = ((1 << 64) - reject) & ((1 << 64) - 1)
    pix = np.ascontiguousarray(img.flat(), dtype=np.int64)
    with _thread_count(workers):
        return engine.build_bits(np.uint64(params.seed), params.bit_count,
                                 pix, np.int64(params.ceiling), np.uint64(m),
                                 np.uint64(limit), reject != 0)


def build_kernel(img: Image, params: KernelParams, workers=None) -> Kernel:
    """All bit_count fingerprint bits; order-independent and deterministic."""
    bits, _, _ = _run_engine(img, params, workers)
    return Kernel(params, bits)


def build_kernels(imgs, params: KernelParams, workers=None) -> list:
    return [build_kernel(img, params, workers) for img in imgs]


def deviation_profile(img: Image, params: KernelParams, workers=None):
    """Diagnostic mode: per-bit (plane, inverted-plane) deviation arrays."""
    _, dev1, dev2 = _run_engine(img, params, workers)
    return dev1, dev2


def similarity(a: Kernel, b: Kernel) -> SimilarityResult:
    """Count of agreeing bits; requires fully identical params."""
    if a.params != b.params:
        raise ValueError("incomparable kernels")
    matches = int(np.count_nonzero(a.bits == b.bits))
    return SimilarityResult(matches, a.params.bit_count)
