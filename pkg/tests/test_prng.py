import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infokernel import prng

U64 = st.integers(min_value=0, max_value=(1 << 64) - 1)
MASK = (1 << 64) - 1


def reference_mix(z):
    """Independent transcription of the output scramble."""
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def reference_sequence(raw_seed, count):
    state = raw_seed & MASK
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK
        out.append(reference_mix(state))
    return out


def unmix(y):
    """Inverse of the scramble, for constructing rejection inputs."""
    def inv_xorshift(v, s):
        r = v
        while True:
            nxt = v ^ (r >> s)
            if nxt == r:
                return r
            r = nxt

    inv1 = pow(0xBF58476D1CE4E5B9, -1, 1 << 64)
    inv2 = pow(0x94D049BB133111EB, -1, 1 << 64)
    z = inv_xorshift(y, 31)
    z = (z * inv2) & MASK
    z = inv_xorshift(z, 27)
    z = (z * inv1) & MASK
    return inv_xorshift(z, 30)


def test_finalize_known_vectors():
    seq = reference_sequence(0, 3)
    assert seq == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    s = prng.Stream(0)
    assert [s.next_raw() for _ in range(3)] == seq


def test_finalize_matches_reference():
    rng = random.Random(7)
    for _ in range(500):
        z = rng.getrandbits(64)
        assert prng.finalize(z) == reference_mix(z)


def test_finalize_bijective_spot_check():
    rng = random.Random(99)
    inputs = {rng.getrandbits(64) for _ in range(1000)}
    outputs = {prng.finalize(z) for z in inputs}
    assert len(outputs) == len(inputs)


@given(U64)
def test_finalize_inverts(z):
    assert unmix(prng.finalize(z)) == z
    assert prng.finalize(unmix(z)) == z


def test_stream_state_advances():
    s = prng.Stream(0)
    before = s.state
    s.next_raw()
    assert s.state != before


@given(U64, st.integers(min_value=0, max_value=(1 << 64) - 1))
@settings(max_examples=50)
def test_derive_stream_pure(seed, index):
    a = prng.derive_stream(seed, index)
    b = prng.derive_stream(seed, index)
    assert a.state == b.state
    assert [a.next_raw() for _ in range(8)] == [b.next_raw() for _ in range(8)]


def test_adjacent_streams_distinct():
    assert prng.derive_stream(0, 0).state != prng.derive_stream(0, 1).state


def test_adjacent_streams_share_no_window():
    # Guards against the naive construction where stream i+1 is stream i
    # shifted by one output.
    s0 = prng.derive_stream(0, 0)
    s1 = prng.derive_stream(0, 1)
    out0 = tuple(s0.next_raw() for _ in range(16))
    out1 = tuple(s1.next_raw() for _ in range(16))
    windows0 = {out0[i:i + 8] for i in range(9)}
    windows1 = {out1[i:i + 8] for i in range(9)}
    assert not windows0 & windows1


def test_next_value_first_draw_c255():
    s = prng.Stream(0)
    assert s.next_value(255) == 0xE220A8397B1DCDAF % 256 == 175


def test_next_value_c1_range():
    s = prng.derive_stream(5, 0)
    draws = {s.next_value(1) for _ in range(200)}
    assert draws <= {0, 1}


@given(U64, st.integers(min_value=1, max_value=5000))
@settings(max_examples=50)
def test_next_value_range(seed, ceiling):
    s = prng.derive_stream(seed, 0)
    assert all(0 <= s.next_value(ceiling) <= ceiling for _ in range(50))


def test_next_value_rejects_bad_ceiling():
    with pytest.raises(ValueError):
        prng.Stream(0).next_value(0)


def test_histogram_c2():
    s = prng.derive_stream(0, 0)
    counts = [0, 0, 0]
    n = 300_000
    for _ in range(n):
        counts[s.next_value(2)] += 1
    for c in counts:
        assert abs(c / n - 1 / 3) < 0.01


# chi-square critical values at p = 0.001 for df = ceiling (values from a
# standard table / Wilson-Hilferty for df=255)
CHI2_CRITICAL = {1: 10.828, 2: 13.816, 255: 330.5}


@pytest.mark.parametrize("ceiling", [1, 2, 255])
def test_uniformity_chi_square(ceiling):
    s = prng.derive_stream(12345, 0)
    n = 100_000
    counts = np.zeros(ceiling + 1, dtype=np.int64)
    for _ in range(n):
        counts[s.next_value(ceiling)] += 1
    expected = n / (ceiling + 1)
    stat = float(((counts - expected) ** 2 / expected).sum())
    assert stat < CHI2_CRITICAL[ceiling]


def test_rejection_redraws():
    # For ceiling 2 (m = 3) the only rejected raw output is 2^64 - 1.
    # Position a stream one step before producing exactly that.
    target_state = unmix(MASK)
    s = prng.Stream((target_state - prng.GAMMA) & MASK)
    probe = prng.Stream(s.state)
    assert probe.next_raw() == MASK
    second = probe.next_raw()
    value = s.next_value(2)
    assert value == second % 3
    assert s.state == probe.state


def test_rejection_bound_arithmetic():
    # m = 3: 2^64 mod 3 = 1, so exactly one raw value is ever rejected.
    assert (1 << 64) % 3 == 1
    # powers of two never reject
    for m in (2, 256, 65536):
        assert (1 << 64) % m == 0


@given(U64, st.integers(min_value=0, max_value=100000),
       st.integers(min_value=1, max_value=4),
       st.integers(min_value=1, max_value=24),
       st.sampled_from([1, 2, 3, 5, 254, 255, 9999, 65535]))
@settings(max_examples=60, deadline=None)
def test_value_block_matches_scalar(seed, first, rows, draws, ceiling):
    block = prng.value_block(seed, first, rows, draws, ceiling)
    assert block.shape == (rows, draws)
    for r in range(rows):
        s = prng.derive_stream(seed, first + r)
        assert list(block[r]) == [s.next_value(ceiling) for _ in range(draws)]
