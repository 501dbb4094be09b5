"""Deterministic image transformations and the robustness bench.

All value math rounds half away from zero and clamps into [0, ceiling].
Geometry (scale, rotate, shift) fills exposed regions with 0; resampling
is bilinear. Noise replaces whole pixels with fresh uniform draws from a
dedicated stream, so equal noise seeds give bit-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import prng
from .images import Image, clamp_round, invert_image, round_half_away
from .kernel import KernelParams, build_kernel, similarity
from .similarity import SimilarityResult, percent_string

KINDS = ("brightness", "contrast", "saturation", "color_balance",
         "noise", "scale", "rotate", "shift", "invert")

_MAGNITUDE_RANGE = {
    "brightness": (-100.0, 100.0),
    "contrast": (-100.0, 400.0),
    "saturation": (-100.0, 400.0),
    "color_balance": (-100.0, 400.0),
    "noise": (0.0, 100.0),
    "scale": (-99.0, 400.0),
    "rotate": (-180.0, 180.0),
    "shift": (-100.0, 100.0),
    "invert": (0.0, 0.0),
}


@dataclass(frozen=True)
class TransformSpec:
    """One transformation: its kind plus magnitude in percent (degrees for
    rotate). noise_seed applies to noise only, channel to color_balance only.
    """

    kind: str
    magnitude: float = 0.0
    noise_seed: int = 1
    channel: str = "R"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown transform kind: {self.kind!r}")
        lo, hi = _MAGNITUDE_RANGE[self.kind]
        if not lo <= self.magnitude <= hi:
            raise ValueError(
                f"{self.kind} magnitude {self.magnitude:g} outside [{lo:g}, {hi:g}]")
        if self.channel not in ("R", "G", "B"):
            raise ValueError("channel must be R, G or B")

    @property
    def label(self) -> str:
        if self.kind == "invert":
            return "invert"
        if self.kind == "color_balance":
            return f"color_balance {self.channel} {self.magnitude:g}"
        return f"{self.kind} {self.magnitude:g}"


def adjust_brightness(img: Image, percent: float) -> Image:
    shift_by = percent * img.ceiling / 100.0
    return Image(clamp_round(img.pixels + shift_by, img.ceiling), img.ceiling)


def adjust_contrast(img: Image, percent: float) -> Image:
    mid = img.ceiling / 2.0
    out = (img.pixels - mid) * (1.0 + percent / 100.0) + mid
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def adjust_saturation(img: Image, percent: float) -> Image:
    if img.channels != 3:
        raise ValueError("saturation requires a 3-channel image")
    luma = round_half_away(img.pixels.astype(np.float64).mean(axis=2))[:, :, None]
    out = luma + (img.pixels - luma) * (1.0 + percent / 100.0)
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def color_balance(img: Image, percent: float, channel: str = "R") -> Image:
    if img.channels != 3:
        raise ValueError("color balance requires a 3-channel image")
    idx = {"R": 0, "G": 1, "B": 2}[channel]
    out = img.pixels.astype(np.float64)
    out[:, :, idx] *= 1.0 + percent / 100.0
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def add_noise(img: Image, percent: float, noise_seed: int = 1) -> Image:
    """Replace each pixel, with probability percent/100, by uniform draws.

    One stream drives everything: per pixel in row-major order, one draw
    in [0, 9999] decides replacement, then (only if replacing) one fresh
    draw in [0, ceiling] per channel.
    """
    stream = prng.derive_stream(noise_seed, 0)
    threshold = 100.0 * percent
    flat = img.flat().copy()
    ch = img.channels
    for p in range(img.width * img.height):
        if stream.next_value(9999) < threshold:
            for c in range(ch):
                flat[p * ch + c] = stream.next_value(img.ceiling)
    return Image.from_flat(img.width, img.height, ch, img.ceiling, flat)


def _bilinear(pixels: np.ndarray, xs: np.ndarray, ys: np.ndarray,
              fill_outside: bool) -> np.ndarray:
    """Sample (h,w,ch) pixels at float coords.

    fill_outside treats everything beyond the raster as value 0 (taps off
    the edge contribute nothing, so exposure blends smoothly to black);
    otherwise coordinates clamp to the edge.
    """
    h, w = pixels.shape[:2]
    if not fill_outside:
        xs = np.clip(xs, 0.0, w - 1.0)
        ys = np.clip(ys, 0.0, h - 1.0)
    x0 = np.floor(xs).astype(np.int64)
    y0 = np.floor(ys).astype(np.int64)
    fx = (xs - x0)[..., None]
    fy = (ys - y0)[..., None]
    vals = pixels.astype(np.float64)

    def tap(yi, xi):
        v = vals[np.clip(yi, 0, h - 1), np.clip(xi, 0, w - 1)]
        if fill_outside:
            valid = (xi >= 0) & (xi < w) & (yi >= 0) & (yi < h)
            v = v * valid[..., None]
        return v

    top = tap(y0, x0) * (1.0 - fx) + tap(y0, x0 + 1) * fx
    bottom = tap(y0 + 1, x0) * (1.0 - fx) + tap(y0 + 1, x0 + 1) * fx
    return top * (1.0 - fy) + bottom * fy


def scale(img: Image, percent: float) -> Image:
    """Magnify by 1 + percent/100 about the center, cropped to the
    original canvas; shrinking exposes a 0-filled border."""
    factor = 1.0 + percent / 100.0
    cx = (img.width - 1) / 2.0
    cy = (img.height - 1) / 2.0
    ys, xs = np.mgrid[0:img.height, 0:img.width].astype(np.float64)
    out = _bilinear(img.pixels, cx + (xs - cx) / factor,
                    cy + (ys - cy) / factor, fill_outside=True)
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def rotate(img: Image, degrees: float) -> Image:
    """Rotate about the center; positive angles turn the content clockwise
    on screen (row 0 at top). Exposed corners fill with 0."""
    theta = np.radians(degrees)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    cx = (img.width - 1) / 2.0
    cy = (img.height - 1) / 2.0
    ys, xs = np.mgrid[0:img.height, 0:img.width].astype(np.float64)
    dx, dy = xs - cx, ys - cy
    out = _bilinear(img.pixels, cx + cos_t * dx + sin_t * dy,
                    cy - sin_t * dx + cos_t * dy, fill_outside=True)
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def shift(img: Image, percent: float) -> Image:
    """Translate by percent of each dimension (rounded half away), fill 0."""
    dx = int(round_half_away(percent * img.width / 100.0))
    dy = int(round_half_away(percent * img.height / 100.0))
    out = np.zeros_like(img.pixels)
    src_x = slice(max(0, -dx), img.width - max(0, dx))
    src_y = slice(max(0, -dy), img.height - max(0, dy))
    dst_x = slice(max(0, dx), img.width - max(0, -dx))
    dst_y = slice(max(0, dy), img.height - max(0, -dy))
    if src_x.start < src_x.stop and src_y.start < src_y.stop:
        out[dst_y, dst_x] = img.pixels[src_y, src_x]
    return Image(out, img.ceiling)


def resize_bilinear(img: Image, width: int, height: int) -> Image:
    """Resample onto a width x height grid (edge-clamped bilinear)."""
    if width < 1 or height < 1:
        raise ValueError("resize dimensions must be at least 1x1")
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    sx = (xs + 0.5) * img.width / width - 0.5
    sy = (ys + 0.5) * img.height / height - 0.5
    out = _bilinear(img.pixels, sx, sy, fill_outside=False)
    return Image(clamp_round(out, img.ceiling), img.ceiling)


def apply_transform(img: Image, spec: TransformSpec) -> Image:
    if spec.kind == "brightness":
        return adjust_brightness(img, spec.magnitude)
    if spec.kind == "contrast":
        return adjust_contrast(img, spec.magnitude)
    if spec.kind == "saturation":
        return adjust_saturation(img, spec.magnitude)
    if spec.kind == "color_balance":
        return color_balance(img, spec.magnitude, spec.channel)
    if spec.kind == "noise":
        return add_noise(img, spec.magnitude, spec.noise_seed)
    if spec.kind == "scale":
        return scale(img, spec.magnitude)
    if spec.kind == "rotate":
        return rotate(img, spec.magnitude)
    if spec.kind == "shift":
        return shift(img, spec.magnitude)
    return invert_image(img)


def default_suite(channels: int = 3, noise_seed: int = 1) -> list:
    """The standard bench rows; color-only rows are omitted for grayscale."""
    rows = [
        TransformSpec("contrast", 40),
        TransformSpec("saturation", 40),
        TransformSpec("color_balance", 40, channel="R"),
        TransformSpec("noise", 20, noise_seed=noise_seed),
        TransformSpec("brightness", 40),
        TransformSpec("scale", 20),
        TransformSpec("rotate", 10),
        TransformSpec("shift", 20),
    ]
    if channels == 1:
        rows = [r for r in rows if r.kind not in ("saturation", "color_balance")]
    return rows


@dataclass(frozen=True)
class BenchRow:
    spec: TransformSpec
    result: SimilarityResult

    def to_dict(self) -> dict:
        d = {"kind": self.spec.kind, "magnitude": self.spec.magnitude}
        if self.spec.kind == "noise":
            d["noise_seed"] = self.spec.noise_seed
        if self.spec.kind == "color_balance":
            d["channel"] = self.spec.channel
        d.update(matches=self.result.matches, total=self.result.total,
                 percent=float(percent_string(self.result.matches,
                                              self.result.total)))
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def bench_transforms(img: Image, params: KernelParams, suite,
                     workers=None) -> list:
    """Fingerprint agreement between the image and each transformed copy,
    rows sorted by descending agreement (stable on ties)."""
    suite = list(suite)
    if not suite:
        raise ValueError("empty transform suite")
    base = build_kernel(img, params, workers)
    rows = []
    for spec in suite:
        transformed = apply_transform(img, spec)
        score = similarity(base, build_kernel(transformed, params, workers))
        rows.append(BenchRow(spec, score))
    rows.sort(key=lambda r: r.result.matches, reverse=True)
    return rows


def bench_table(rows) -> str:
    width = max(len(r.spec.label) for r in rows)
    lines = [f"{'transform':<{width}}  percent"]
    for r in rows:
        lines.append(f"{r.spec.label:<{width}}  {r.result.percent_text}")
    return "\n".join(lines)
