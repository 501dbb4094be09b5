"""IKRN kernel files: a fixed little-endian header plus packed bits.

Layout: "IKRN" | version u8 = 1 | flags u8 (bit0 = template) |
channels u8 | reserved u8 = 0 | ceiling u16 | width u32 | height u32 |
seed u64 | bit_count u64 | ceil(bit_count/8) payload bytes, bits
MSB-first within each byte, zero padding.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .kernel import Kernel, KernelParams

MAGIC = b"IKRN"
VERSION = 1

_HEADER = struct.Struct("<4sBBBBHIIQQ")


def kernel_to_bytes(kernel: Kernel) -> bytes:
    p = kernel.params
    header = _HEADER.pack(MAGIC, VERSION, 1 if kernel.is_template else 0,
                          p.channels, 0, p.ceiling, p.width, p.height,
                          p.seed, p.bit_count)
    return header + kernel.packed()


def kernel_from_bytes(data: bytes) -> Kernel:
    if data[:4] != MAGIC:
        raise ValueError("bad magic")
    if len(data) < _HEADER.size:
        raise ValueError("truncated payload")
    (_, version, flags, channels, reserved, ceiling, width, height,
     seed, bit_count) = _HEADER.unpack_from(data)
    if version != VERSION:
        raise ValueError(f"unsupported version {version}")
    if flags & ~1:
        raise ValueError(f"unsupported flags 0x{flags:02x}")
    if reserved != 0:
        raise ValueError("malformed header: nonzero reserved byte")
    params = KernelParams(seed=seed, bit_count=bit_count, ceiling=ceiling,
                          width=width, height=height, channels=channels)
    payload_len = (bit_count + 7) // 8
    expected = _HEADER.size + payload_len
    if len(data) < expected:
        raise ValueError("truncated payload")
    if len(data) > expected:
        raise ValueError("trailing bytes after payload")
    payload = data[_HEADER.size:]
    if bit_count % 8 and payload[-1] & ((1 << (8 - bit_count % 8)) - 1):
        raise ValueError("nonzero padding bits")
    return Kernel.from_packed(params, payload, is_template=bool(flags & 1))


def read_kernel(path) -> Kernel:
    return kernel_from_bytes(Path(path).read_bytes())


def write_kernel(kernel: Kernel, path) -> None:
    Path(path).write_bytes(kernel_to_bytes(kernel))
