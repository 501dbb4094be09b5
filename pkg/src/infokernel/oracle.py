"""Exact brute-force kernels over small strings.

A string's kernel records, for every possible variant of the same length,
whether that variant is a weak transformation of the string (differs in
strictly fewer than half the positions). Kernels of two strings agree
bit-for-bit exactly where the strings classify variants alike, so the
number of agreeing bits measures how similar the strings are. Exhaustive
enumeration is feasible only at desk scale; this module is the ground
truth the sampled image path is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .similarity import SimilarityResult

MAX_EXACT_BITS = 24  # 2^24 kernel bits = 16 MiB, the exhaustive ceiling


@dataclass(frozen=True)
class BitString:
    """An n-bit string held as (length, value), value bit n-1 first."""

    length: int
    value: int

    def __post_init__(self):
        if not 1 <= self.length <= MAX_EXACT_BITS:
            raise ValueError(f"length must be in [1, {MAX_EXACT_BITS}]")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError("value does not fit in length bits")

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits) -> "BitString":
        """Build from an iterable of 0/1, first element most significant."""
        seq = list(bits)
        value = 0
        for b in seq:
            value = (value << 1) | int(b)
        return cls(len(seq), value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")


@dataclass(frozen=True)
class GeneralString:
    """A string over the alphabet [0, ceiling], arbitrary element count."""

    ceiling: int
    elems: tuple

    def __post_init__(self):
        if self.ceiling < 1:
            raise ValueError("ceiling must be >= 1")
        if len(self.elems) < 1:
            raise ValueError("need at least one element")
        if any(not 0 <= e <= self.ceiling for e in self.elems):
            raise ValueError("element out of [0, ceiling]")


@dataclass(frozen=True)
class ExactKernel:
    """Exhaustive kernel: bit v says whether variant v is a weak transform."""

    source_length: int
    bits: np.ndarray

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    @property
    def popcount(self) -> int:
        return int(self.bits.sum())


def classify_transformation(s: BitString, v: BitString) -> int:
    """1 (weak) iff v differs from s in strictly fewer than n/2 bits, else 0.

    The boundary is strict: at exactly n/2 differing bits the variant is
    strong. Ties only arise for even n.
    """
    if s.length != v.length:
        raise ValueError("incomparable lengths")
    distance = (s.value ^ v.value).bit_count()
    return 1 if 2 * distance < s.length else 0


def exact_kernel(s: BitString) -> ExactKernel:
    """Kernel over all 2^n variants, enumerated in ascending integer order."""
    if s.length > MAX_EXACT_BITS:
        raise ValueError("exhaustive kernel infeasible")
    variants = np.arange(1 << s.length, dtype=np.uint32)
    distance = np.bitwise_count(variants ^ np.uint32(s.value))
    bits = (2 * distance.astype(np.int64) < s.length).astype(np.uint8)
    return ExactKernel(s.length, bits)


def exact_similarity(s1: BitString, s2: BitString) -> SimilarityResult:
    """Agreement count between the exhaustive kernels of two strings."""
    if s1.length != s2.length:
        raise ValueError("incomparable lengths")
    k1 = exact_kernel(s1)
    k2 = exact_kernel(s2)
    matches = int(np.count_nonzero(k1.bits == k2.bits))
    return SimilarityResult(matches, 1 << s1.length)


def generalized_exact_kernel(s: GeneralString) -> np.ndarray:
    """Exhaustive kernel over all (ceiling+1)^n variants of a general string.

    Variants are enumerated in ascending mixed-radix order, first element
    most significant. Bit v is 1 iff the source lies strictly closer (L1)
    to variant v than to its pointwise inversion; ties give 0. For
    ceiling=1 this coincides with exact_kernel on the same bits.
    """
    radix = s.ceiling + 1
    count = len(s.elems)
    total = radix ** count
    if total > (1 << MAX_EXACT_BITS):
        raise ValueError("exhaustive kernel infeasible")
    variants = np.arange(total, dtype=np.int64)
    dist = np.zeros(total, dtype=np.int64)
    dist_inv = np.zeros(total, dtype=np.int64)
    for pos, elem in enumerate(s.elems):
        digit = (variants // radix ** (count - 1 - pos)) % radix
        dist += np.abs(digit - elem)
        dist_inv += np.abs((s.ceiling - digit) - elem)
    return (dist < dist_inv).astype(np.uint8)
