import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infokernel.ikrn import kernel_from_bytes, kernel_to_bytes, read_kernel, write_kernel
from infokernel.kernel import Kernel, KernelParams


def make_kernel(bits, *, seed=0, ceiling=255, width=2, height=2, channels=1,
                template=False):
    params = KernelParams(seed=seed, bit_count=len(bits), ceiling=ceiling,
                          width=width, height=height, channels=channels)
    return Kernel(params, list(bits), is_template=template)


def test_header_layout():
    k = make_kernel([1, 0, 1], seed=0x1122334455667788, ceiling=300,
                    width=5, height=6, channels=3, template=True)
    data = kernel_to_bytes(k)
    assert data[:4] == b"IKRN"
    assert data[4] == 1          # version
    assert data[5] == 1          # template flag
    assert data[6] == 3          # channels
    assert data[7] == 0          # reserved
    assert data[8:10] == (300).to_bytes(2, "little")
    assert data[10:14] == (5).to_bytes(4, "little")
    assert data[14:18] == (6).to_bytes(4, "little")
    assert data[18:26] == (0x1122334455667788).to_bytes(8, "little")
    assert data[26:34] == (3).to_bytes(8, "little")
    assert data[34:] == bytes([0b10100000])


def test_hand_built_single_byte_payload():
    header = (b"IKRN" + bytes([1, 0, 1, 0]) + (255).to_bytes(2, "little")
              + (5).to_bytes(4, "little") + (1).to_bytes(4, "little")
              + (7).to_bytes(8, "little") + (5).to_bytes(8, "little"))
    k = kernel_from_bytes(header + bytes([0b11010000]))
    assert k.params.bit_count == 5
    assert list(k.bits) == [1, 1, 0, 1, 0]
    assert not k.is_template


def test_round_trip_via_files(tmp_path):
    k = make_kernel([1, 0, 1, 1, 0, 0, 1, 0, 1], template=True)
    path = tmp_path / "k.ikrn"
    write_kernel(k, path)
    assert read_kernel(path) == k


def test_rejects_bad_magic():
    with pytest.raises(ValueError, match="bad magic"):
        kernel_from_bytes(b"NOPE" + bytes(40))


def test_rejects_unknown_version():
    data = bytearray(kernel_to_bytes(make_kernel([1, 0])))
    data[4] = 2
    with pytest.raises(ValueError, match="unsupported version"):
        kernel_from_bytes(bytes(data))


def test_rejects_unknown_flags():
    data = bytearray(kernel_to_bytes(make_kernel([1, 0])))
    data[5] = 0x82
    with pytest.raises(ValueError, match="unsupported flags"):
        kernel_from_bytes(bytes(data))


def test_rejects_nonzero_reserved():
    data = bytearray(kernel_to_bytes(make_kernel([1, 0])))
    data[7] = 9
    with pytest.raises(ValueError, match="reserved"):
        kernel_from_bytes(bytes(data))


def test_rejects_short_and_long_files():
    data = kernel_to_bytes(make_kernel([1] * 12))
    with pytest.raises(ValueError, match="truncated payload"):
        kernel_from_bytes(data[:-1])
    with pytest.raises(ValueError, match="trailing bytes"):
        kernel_from_bytes(data + b"\x00")


def test_rejects_nonzero_padding():
    data = bytearray(kernel_to_bytes(make_kernel([1, 0, 1])))
    data[-1] |= 0b00000001
    with pytest.raises(ValueError, match="nonzero padding"):
        kernel_from_bytes(bytes(data))


def test_rejects_zero_bit_count():
    data = bytearray(kernel_to_bytes(make_kernel([1])))
    data[26:34] = (0).to_bytes(8, "little")
    with pytest.raises(ValueError, match="bit_count"):
        kernel_from_bytes(bytes(data[:34]))


kernels = st.builds(
    lambda seed, ceiling, w, h, ch, template, nbits, bit_seed: make_kernel(
        np.random.default_rng(bit_seed).integers(0, 2, nbits),
        seed=seed, ceiling=ceiling, width=w, height=h, channels=ch,
        template=template),
    st.integers(0, (1 << 64) - 1), st.integers(1, 65535),
    st.integers(1, 64), st.integers(1, 64), st.sampled_from([1, 3]),
    st.booleans(), st.integers(1, 200), st.integers(0, 2 ** 31),
)


@given(kernels)
@settings(max_examples=120, deadline=None)
def test_round_trip_fuzzed(k):
    assert kernel_from_bytes(kernel_to_bytes(k)) == k
