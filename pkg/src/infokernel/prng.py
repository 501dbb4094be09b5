"""Deterministic 64-bit pseudorandom streams.

SplitMix64-style generator: a stream walks its state by a fixed odd
increment and scrambles each state with a finalizer. Per-stream base
states are themselves finalizer-scrambled so any number of independent
streams can be derived from one seed and consumed in any order (or in
parallel) with bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

_G = np.uint64(GAMMA)
_M1 = np.uint64(MIX1)
_M2 = np.uint64(MIX2)


def finalize(z: int) -> int:
    """Bijective scramble of a 64-bit value (SplitMix64 output mix)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


@dataclass
class Stream:
    """A deterministic stream; equal state means equal output forever."""

    state: int

    def next_raw(self) -> int:
        """Advance by one step and return the scrambled 64-bit output."""
        self.state = (self.state + GAMMA) & MASK64
        return finalize(self.state)

    def next_value(self, ceiling: int) -> int:
        """Unbiased draw from [0, ceiling] via rejection sampling.

        For ceiling + 1 a power of two no draw is ever rejected.
        """
        if ceiling < 1:
            raise ValueError("ceiling must be >= 1")
        m = ceiling + 1
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            z = self.next_raw()
            if z < limit:
                return z % m


def derive_stream(seed: int, stream_index: int) -> Stream:
    """Independent substream `stream_index` of the generator seeded by `seed`."""
    base = (seed + ((stream_index + 1) & MASK64) * GAMMA) & MASK64
    return Stream(finalize(base))


def _finalize_u64(z: np.ndarray) -> np.ndarray:
    """Vectorized finalize, in place on a uint64 array."""
    t = np.empty_like(z)
    np.right_shift(z, np.uint64(30), out=t)
    np.bitwise_xor(z, t, out=z)
    np.multiply(z, _M1, out=z)
    np.right_shift(z, np.uint64(27), out=t)
    np.bitwise_xor(z, t, out=z)
    np.multiply(z, _M2, out=z)
    np.right_shift(z, np.uint64(31), out=t)
    np.bitwise_xor(z, t, out=z)
    return z


def stream_bases(seed: int, first: int, count: int) -> np.ndarray:
    """Base states of streams first .. first+count-1, as uint64."""
    idx = np.arange(first, first + count, dtype=np.uint64)
    z = (np.uint64(seed & MASK64) + (idx + np.uint64(1)) * _G).astype(np.uint64)
    return _finalize_u64(z)


def value_block(seed: int, first_stream: int, stream_count: int,
                draws: int, ceiling: int) -> np.ndarray:
    """Matrix of draws: row r holds the first `draws` values in [0, ceiling]
    of stream first_stream + r. Bit-identical to calling next_value in a loop.
    """
    if ceiling < 1:
        raise ValueError("ceiling must be >= 1")
    m = ceiling + 1
    bases = stream_bases(seed, first_stream, stream_count)
    steps = np.arange(1, draws + 1, dtype=np.uint64) * _G
    z = bases[:, None] + steps[None, :]
    _finalize_u64(z)
    bad_rows = ()
    reject = (1 << 64) % m
    if reject:
        limit = np.uint64((1 << 64) - reject)
        bad = (z >= limit).any(axis=1)
        if bad.any():
            bad_rows = np.flatnonzero(bad)
    if m & (m - 1) == 0:
        np.bitwise_and(z, np.uint64(m - 1), out=z)
    else:
        np.mod(z, np.uint64(m), out=z)
    vals = z.astype(np.uint8 if ceiling <= 0xFF else np.uint16)
    # A rejected draw shifts every later draw of its stream; redo those
    # rows with the scalar generator.
    for r in bad_rows:
        s = derive_stream(seed, first_stream + int(r))
        vals[r, :] = [s.next_value(ceiling) for _ in range(draws)]
    return vals
