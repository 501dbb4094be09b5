"""Jitted hot path: fused plane generation and deviation accumulation.

Each fingerprint bit owns its own stream, so bits can be computed in any
order and across any number of threads with bit-identical results. The
pure-Python composition in kernel.py (generate_plane + deviation) is the
reference; tests pin this implementation to it exactly.
"""

from __future__ import annotations

import warnings

import numpy as np
from numba import int64, njit, prange, uint64

# Numba complains when it probes an old TBB while picking its threading
# layer; the probe failure is harmless (it falls back to OpenMP).
warnings.filterwarnings("ignore", message="The TBB threading layer requires TBB")


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    return z ^ (z >> uint64(31))


@njit(parallel=True, cache=True)
def build_bits(seed, bit_count, pix, ceiling, m, limit, check_reject):
    """Kernel bits plus both per-bit deviations for one image.

    pix: flattened image as int64. m = ceiling + 1; limit is the rejection
    threshold (unused when check_reject is False, i.e. m a power of two).
    """
    gamma = uint64(0x9E3779B97F4A7C15)
    npix = pix.shape[0]
    bits = np.zeros(bit_count, dtype=np.uint8)
    dev1 = np.empty(bit_count, dtype=np.int64)
    dev2 = np.empty(bit_count, dtype=np.int64)
    for i in prange(bit_count):
        state = _mix(uint64(seed) + (uint64(i) + uint64(1)) * gamma)
        d1 = int64(0)
        d2 = int64(0)
        for j in range(npix):
            state = state + gamma
            z = _mix(state)
            if check_reject:
                while z >= limit:
                    state = state + gamma
                    z = _mix(state)
            p = int64(z % m)
            a = pix[j]
            d1 += abs(a - p)
            d2 += abs(a - (ceiling - p))
        if d1 < d2:
            bits[i] = 1
        dev1[i] = d1
        dev2[i] = d2
    return bits, dev1, dev2
