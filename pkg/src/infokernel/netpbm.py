"""PGM/PPM image files (netpbm P2/P3 plain, P5/P6 raw).

maxval becomes the image's intensity ceiling; maxval above 255 means
two-byte big-endian samples in the raw formats. Writing always emits the
raw variant.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .images import Image

_WHITESPACE = b" \t\r\n\x0b\x0c"


class _Scanner:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_separators(self) -> None:
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == ord("#"):
                while self.pos < len(data) and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def read_int(self, context: str) -> int:
        self.skip_separators()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos] in b"0123456789":
            self.pos += 1
        if self.pos == start:
            if self.pos >= len(data):
                raise ValueError(f"truncated payload: missing {context}")
            raise ValueError(f"malformed {context}")
        return int(data[start:self.pos])


def decode_image(data: bytes) -> Image:
    magic = data[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise ValueError("malformed header: not a PGM/PPM file")
    channels = 1 if magic in (b"P2", b"P5") else 3
    plain = magic in (b"P2", b"P3")
    scan = _Scanner(data)
    scan.pos = 2
    width = scan.read_int("header")
    height = scan.read_int("header")
    maxval = scan.read_int("header")
    if width < 1 or height < 1:
        raise ValueError("malformed header: bad dimensions")
    if not 1 <= maxval <= 0xFFFF:
        raise ValueError("malformed header: maxval out of range")
    count = width * height * channels
    if plain:
        samples = np.empty(count, dtype=np.uint16)
        for i in range(count):
            v = scan.read_int("payload")
            if v > maxval:
                raise ValueError(f"sample value {v} exceeds maxval {maxval}")
            samples[i] = v
    else:
        if scan.pos >= len(data) or data[scan.pos] not in _WHITESPACE:
            raise ValueError("malformed header: missing raster separator")
        scan.pos += 1
        wide = maxval > 0xFF
        needed = count * (2 if wide else 1)
        raster = data[scan.pos:scan.pos + needed]
        if len(raster) < needed:
            raise ValueError("truncated payload")
        samples = np.frombuffer(raster, dtype=">u2" if wide else "u1")
        samples = samples.astype(np.uint16)
        high = int(samples.max(initial=0))
        if high > maxval:
            raise ValueError(f"sample value {high} exceeds maxval {maxval}")
    return Image.from_flat(width, height, channels, maxval, samples)


def encode_image(img: Image) -> bytes:
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + b"\n%d %d\n%d\n" % (img.width, img.height, img.ceiling)
    if img.ceiling > 0xFF:
        payload = img.pixels.astype(">u2").tobytes()
    else:
        payload = img.pixels.astype(np.uint8).tobytes()
    return header + payload


def read_image(path) -> Image:
    return decode_image(Path(path).read_bytes())


def write_image(img: Image, path) -> None:
    Path(path).write_bytes(encode_image(img))
